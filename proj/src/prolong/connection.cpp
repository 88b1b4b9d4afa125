#include "kt/prolong/prolong.hpp"

#include "kt/tensor/forms.hpp"

#include <stdexcept>

namespace kt {

int pair_index(int n, int a, int b) {
  if (a >= b) throw std::invalid_argument("pair_index: need a < b");
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

const SpMat& ConnectionCurvature::at(int a, int b) const { return lambda[pair_index(n, a, b)]; }

ConnectionCurvature connection_curvature(const SymmetricPair& p, const InvariantConnection& c) {
  ConnectionCurvature out;
  out.n = p.n;
  const int d = c.dim();
  for (int a = 0; a < p.n; ++a)
    for (int b = a + 1; b < p.n; ++b) {
      SpMat m = commutator(c.alpha[a], c.alpha[b]);
      for (const auto& [k, v] : p.g.bracket(a, b)) {
        if (k < p.n) throw ConventionError("connection_curvature: [m, m] has an m-component");
        m = m - v * c.rho[k - p.n];
      }
      if (m.rows != d) throw std::logic_error("connection_curvature: shape");
      out.lambda.push_back(std::move(m));
    }
  return out;
}

bool equivariant_family(const SymmetricPair& p, const std::vector<SpMat>& family, const std::vector<SpMat>& rho_src,
                        const std::vector<SpMat>& rho_dst) {
  for (int k = 0; k < p.kdim; ++k)
    for (int a = 0; a < p.n; ++a) {
      SpMat lhs = rho_dst[k] * family[a] - family[a] * rho_src[k];
      SpMat rhs = sparse_zero(lhs.rows, lhs.cols);
      for (const auto& [b, v] : p.g.bracket(p.n + k, a)) {
        if (b >= p.n) return false;
        rhs = rhs + v * family[b];
      }
      if (!(lhs == rhs)) return false;
    }
  return true;
}

Report check_connection(const SymmetricPair& p, const InvariantConnection& c) {
  Report r;
  bool shapes = int(c.rho.size()) == p.kdim && int(c.alpha.size()) == p.n;
  for (const auto& m : c.rho) shapes = shapes && m.rows == c.dim() && m.cols == c.dim();
  for (const auto& m : c.alpha) shapes = shapes && m.rows == c.dim() && m.cols == c.dim();
  r.add(c.label + ".shapes", shapes);
  if (!shapes) return r;
  bool rep = true;
  for (int i = 0; i < p.kdim && rep; ++i)
    for (int j = i + 1; j < p.kdim && rep; ++j) {
      SpMat rhs = sparse_zero(c.dim(), c.dim());
      for (const auto& [l, v] : p.g.bracket(p.n + i, p.n + j)) rhs = rhs + v * c.rho[l - p.n];
      rep = commutator(c.rho[i], c.rho[j]) == rhs;
    }
  r.add(c.label + ".representation", rep);
  r.add(c.label + ".equivariance", equivariant_family(p, c.alpha, c.rho, c.rho));
  return r;
}

InvariantConnection tensor_bundle(const SymmetricPair& p, const std::vector<std::string>& kinds,
                                  const std::string& label) {
  InvariantConnection c;
  c.label = label;
  Isotropy iso = isotropy(p);
  std::vector<std::vector<SpMat>> parts;
  for (const auto& k : kinds) {
    c.fiber.add(k, fiber(p.n, k));
    parts.push_back(rho_matrices(iso, *c.fiber.parts.back()));
  }
  const int d = c.dim();
  for (int k = 0; k < p.kdim; ++k) {
    SpMat m = sparse_zero(d, d);
    for (std::size_t i = 0; i < kinds.size(); ++i)
      m = m + place_block(parts[i][k], d, d, c.fiber.offset[i], c.fiber.offset[i]);
    c.rho.push_back(std::move(m));
  }
  c.alpha.assign(p.n, sparse_zero(d, d));
  return c;
}

SpMat block(const SpMat& m, const FiberSum& rows, int i, const FiberSum& cols, int j) {
  SpMat r = block_rows(m, rows.offset[i], rows.parts[i]->dim());
  return block_column(r, cols.offset[j], cols.parts[j]->dim());
}

namespace {

SpMat embed2(const SpMat& uu, const SpMat& uv, const SpMat& vu, const SpMat& vv, int du, int dv) {
  const int d = du + dv;
  return place_block(uu, d, d, 0, 0) + place_block(uv, d, d, 0, du) + place_block(vu, d, d, du, 0) +
         place_block(vv, d, d, du, du);
}

}  // namespace

InvariantConnection generic_prolong(const SymmetricPair& p, const InvariantConnection& u, const InvariantConnection& v,
                                    const std::vector<SpMat>& partial, const std::vector<SpMat>& kappa,
                                    const std::string& label, bool verify) {
  const int n = p.n, du = u.dim(), dv = v.dim();
  if (int(partial.size()) != n || int(kappa.size()) != n) throw std::invalid_argument("generic_prolong: form count");
  if (!equivariant_family(p, partial, v.rho, u.rho)) throw ConventionError(label + ": ∂ is not equivariant");
  if (!equivariant_family(p, kappa, u.rho, v.rho)) throw ConventionError(label + ": κ̃ is not equivariant");
  ConnectionCurvature cu = connection_curvature(p, u);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      SpMat wedge = partial[a] * kappa[b] - partial[b] * kappa[a];
      if (!(wedge == cu.at(a, b))) throw LiftError(label + ": κ̃ is not a lift of the curvature");
      SpMat nab = u.alpha[a] * partial[b] - partial[b] * v.alpha[a] - u.alpha[b] * partial[a] + partial[a] * v.alpha[b];
      if (!is_zero(nab)) throw ConventionError(label + ": ∇∧∂ does not vanish");
    }
  InvariantConnection c;
  c.label = label;
  for (std::size_t i = 0; i < u.fiber.parts.size(); ++i) c.fiber.add(u.fiber.labels[i], u.fiber.parts[i]);
  for (std::size_t i = 0; i < v.fiber.parts.size(); ++i) c.fiber.add(v.fiber.labels[i], v.fiber.parts[i]);
  for (int k = 0; k < p.kdim; ++k)
    c.rho.push_back(embed2(u.rho[k], sparse_zero(du, dv), sparse_zero(dv, du), v.rho[k], du, dv));
  for (int a = 0; a < n; ++a) c.alpha.push_back(embed2(u.alpha[a], Q(-1) * partial[a], kappa[a], v.alpha[a], du, dv));
  if (verify) {
    ConnectionCurvature cc = connection_curvature(p, c);
    for (const auto& m : cc.lambda)
      if (!is_zero(block_rows(m, 0, du))) throw ConventionError(label + ": U-curvature does not vanish");
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int e = b + 1; e < n; ++e) {
          SpMat z = partial[a] * block_rows(cc.at(b, e), du, dv) - partial[b] * block_rows(cc.at(a, e), du, dv) +
                    partial[e] * block_rows(cc.at(a, b), du, dv);
          if (!is_zero(z)) throw ConventionError(label + ": V-curvature is not in ker ∂∧");
        }
  }
  return c;
}

std::vector<SpMat> solve_lift(const SymmetricPair& p, const InvariantConnection& u, const std::vector<SpMat>& partial,
                              int vdim) {
  const int n = p.n, du = u.dim();
  // Unknown: κ̃ ∈ Hom(U, Λ¹⊗V) column by column; ∂∧ : Λ¹⊗V → Λ²⊗U.
  SpMat w = wedge_partial(n, 1, partial);
  QMat wd = to_dense(w);
  ConnectionCurvature cu = connection_curvature(p, u);
  FormBlocks pairs(n, 2);
  QMat rhs(pairs.count() * du, du);
  for (int s = 0; s < pairs.count(); ++s) {
    const SpMat& m = cu.at(pairs.subsets[s][0], pairs.subsets[s][1]);
    for (int j = 0; j < du; ++j)
      for (int q = m.ptr[j]; q < m.ptr[j + 1]; ++q) rhs(s * du + m.idx[q], j) = m.val[q];
  }
  int rk = 0;
  auto x = solve_columns(wd, rhs, &rk);
  if (!x) throw LiftError("solve_lift: curvature is not in the image of ∂∧");
  if (rk != w.cols) throw LiftError("solve_lift: ∂∧ is not injective");
  std::vector<std::vector<SparseVec>> cols(n, std::vector<SparseVec>(du));
  for (int j = 0; j < du; ++j)
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < vdim; ++i)
        if (sgn((*x)(a * vdim + i, j)) != 0) cols[a][j].emplace_back(i, (*x)(a * vdim + i, j));
  std::vector<SpMat> out;
  for (int a = 0; a < n; ++a) out.push_back(sparse_from_columns(vdim, cols[a]));
  return out;
}

}  // namespace kt
