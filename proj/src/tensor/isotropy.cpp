#include "kt/tensor/isotropy.hpp"

#include <array>

namespace kt {

Isotropy isotropy(const SymmetricPair& p) {
  Isotropy iso;
  iso.n = p.n;
  iso.kdim = p.kdim;
  iso.rows.assign(p.kdim, std::vector<std::vector<std::pair<int, Q>>>(p.n));
  iso.cols = iso.rows;
  for (int k = 0; k < p.kdim; ++k)
    for (int c = 0; c < p.n; ++c)
      for (const auto& [e, v] : p.g.bracket(p.n + k, c)) {
        iso.rows[k][e].emplace_back(c, v);
        iso.cols[k][c].emplace_back(e, v);
      }
  return iso;
}

SparseTensor rho_apply(const Isotropy& iso, int k, const SparseTensor& t, const std::vector<Variance>& var) {
  SparseTensor out(t.n(), t.rank());
  std::array<int, 12> idx{};
  for (const auto& [h, v] : t.entries()) {
    t.digits(h, idx.data());
    for (int s = 0; s < t.rank(); ++s) {
      const int x = idx[s];
      if (var[s] == Variance::Co) {
        for (const auto& [c, m] : iso.rows[k][x]) {
          idx[s] = c;
          out.add(out.flat(idx.data()), -m * v);
        }
      } else {
        for (const auto& [e, m] : iso.cols[k][x]) {
          idx[s] = e;
          out.add(out.flat(idx.data()), m * v);
        }
      }
      idx[s] = x;
    }
  }
  return out;
}

std::vector<SpMat> rho_matrices(const Isotropy& iso, const Fiber& f, bool check) {
  std::vector<SpMat> out;
  for (int k = 0; k < iso.kdim; ++k)
    out.push_back(tensor_matrix(f, f, [&](const SparseTensor& t) { return rho_apply(iso, k, t, f.variance()); }, check));
  return out;
}

bool is_equivariant(const SpMat& f, const std::vector<SpMat>& rho_src, const std::vector<SpMat>& rho_dst) {
  for (std::size_t k = 0; k < rho_src.size(); ++k)
    if (!(f * rho_src[k] == rho_dst[k] * f)) return false;
  return true;
}

}  // namespace kt
