#include "rmm/assembly.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <thread>

namespace rmm {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Row pattern from the union of element dof sets, plus the mean-value
// couplings of the mixed formulation. Every row stores its diagonal.
CsrMatrix build_pattern(const Mesh& mesh, const DofMap& dm) {
  const int n = dm.total;
  const int nt = mesh.num_tets();
  std::vector<int> count(n + 1, 0);
  for (int t = 0; t < nt; ++t)
    for (int d : dm.element(t)) ++count[d + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<int> elems(count[n]);
  {
    std::vector<int> pos(count.begin(), count.end() - 1);
    for (int t = 0; t < nt; ++t)
      for (int d : dm.element(t)) elems[pos[d]++] = t;
  }

  CsrMatrix K;
  K.n = n;
  K.row_ptr.assign(1, 0);
  std::vector<int> mark(n, -1), cols;
  for (int i = 0; i < n; ++i) {
    cols.clear();
    auto add = [&](int j) {
      if (mark[j] != i) {
        mark[j] = i;
        cols.push_back(j);
      }
    };
    add(i);
    for (int k = count[i]; k < count[i + 1]; ++k)
      for (int d : dm.element(elems[k])) add(d);
    if (dm.n_mean > 0) {
      if (i >= dm.off_q && i < dm.off_mean) add(dm.mean_dof((i - dm.off_q) % 3));
      if (i >= dm.off_mean)
        for (int t = 0; t < nt; ++t) add(dm.q_dof(t, i - dm.off_mean));
    }
    std::sort(cols.begin(), cols.end());
    K.col_idx.insert(K.col_idx.end(), cols.begin(), cols.end());
    K.row_ptr.push_back(static_cast<int>(K.col_idx.size()));
  }
  K.values.assign(K.col_idx.size(), 0.0);
  return K;
}

void scatter_element(CsrMatrix& K, Eigen::VectorXd& F, std::span<const int> dofs, const ElementSystem& es) {
  const int n = static_cast<int>(dofs.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return dofs[a] < dofs[b]; });
  for (int i = 0; i < n; ++i) {
    const int row = dofs[i];
    F[row] += es.f_local[i];
    int k = K.row_ptr[row];
    for (int jj = 0; jj < n; ++jj) {
      const int j = order[jj];
      while (K.col_idx[k] != dofs[j]) ++k;
      K.values[k] += es.k_local(i, j);
    }
  }
}

}  // namespace

GlobalSystem assemble_global(const Mesh& mesh, const DofMap& dm, ElementKind kind, const MaterialParams& params,
                             const Loads& loads, const BoundaryData& bc, const AssemblyOptions& opt) {
  const bool mixed = kind == ElementKind::mixed || kind == ElementKind::mixed_limit;
  if (mixed != (dm.formulation == Formulation::mixed)) throw InputError("element kind does not match dof map");
  if (bc.dofs.empty() && params.mu_c == 0.0 && kind != ElementKind::cauchy)
    std::clog << "warning: no Dirichlet boundary and mu_c = 0, the problem is not coercive\n";

  GlobalSystem sys;
  sys.K = build_pattern(mesh, dm);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(dm.total);

  const int nt = mesh.num_tets();
  const int threads = std::max(1, std::min(resolve_threads(opt.threads), nt));
  const int batch = 64 * threads;
  std::vector<ElementSystem> buf(batch);
  for (int start = 0; start < nt; start += batch) {
    const int stop = std::min(nt, start + batch);
    auto work = [&](int tid) {
      for (int t = start + tid; t < stop; t += threads)
        buf[t - start] = element_system(element_geometry(mesh, t), dm.sequence, kind, params, loads);
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int tid = 0; tid < threads; ++tid) pool.emplace_back(work, tid);
      for (auto& th : pool) th.join();
    }
    // Merge in element order so the sums do not depend on the thread count.
    for (int t = start; t < stop; ++t) scatter_element(sys.K, F, dm.element(t), buf[t - start]);
  }

  if (dm.n_mean > 0)
    for (int t = 0; t < nt; ++t) {
      const double vol = element_geometry(mesh, t).volume;
      for (int k = 0; k < 3; ++k) {
        const int q = dm.q_dof(t, k), m = dm.mean_dof(k);
        sys.K.values[sys.K.find(q, m)] += vol;
        sys.K.values[sys.K.find(m, q)] += vol;
      }
    }

  if (opt.keep_unconstrained) {
    sys.K_full = sys.K;
    sys.f_full = F;
  }

  // Symmetric elimination with rhs lift.
  std::vector<char> fixed(dm.total, 0);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dm.total);
  for (size_t k = 0; k < bc.dofs.size(); ++k) {
    if (bc.dofs[k] < 0 || bc.dofs[k] >= dm.total) throw InputError("Dirichlet dof out of range");
    fixed[bc.dofs[k]] = 1;
    g[bc.dofs[k]] = bc.values[k];
  }
  CsrMatrix& K = sys.K;
  for (int i = 0; i < K.n; ++i) {
    for (int k = K.row_ptr[i]; k < K.row_ptr[i + 1]; ++k) {
      const int j = K.col_idx[k];
      if (fixed[i]) {
        K.values[k] = i == j ? 1.0 : 0.0;
      } else if (fixed[j]) {
        F[i] -= K.values[k] * g[j];
        K.values[k] = 0.0;
      }
    }
    if (fixed[i]) F[i] = g[i];
  }
  sys.rhs = std::move(F);
  return sys;
}

}  // namespace rmm
