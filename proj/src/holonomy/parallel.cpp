#include "kt/holonomy/holonomy.hpp"

namespace kt {

SubspaceBasis FlatSubspace::vectors() const {
  if (!basis) throw std::logic_error(label + ": no exact basis (float or sketched run)");
  return basis->basis();
}

FlatSubspace parallel_subspace(const SymmetricPair& p, const InvariantConnection& conn, const HolonomyOptions& opt) {
  return parallel_subspace(p, conn, connection_curvature(p, conn), opt);
}

FlatSubspace parallel_subspace(const SymmetricPair&, const InvariantConnection& conn, const ConnectionCurvature& curv,
                               const HolonomyOptions& opt) {
  std::vector<SpMat> ops = conn.alpha;
  if (opt.include_rho) ops.insert(ops.end(), conn.rho.begin(), conn.rho.end());
  ClosureResult r = kernel_closure(conn.dim(), curv.lambda, ops, opt.fix);
  FlatSubspace out;
  out.label = conn.label;
  out.ambient = conn.dim();
  out.dim = r.dim;
  out.trace = std::move(r.trace);
  out.basis = std::move(r.basis);
  out.certified = r.certified;
  out.method = r.method;
  return out;
}

Report check_parallel_flat(const SymmetricPair& p, const InvariantConnection& conn, const SubspaceBasis& vs,
                           const std::string& name) {
  Report r;
  QEchelon ech(conn.dim());
  for (const auto& v : vs.vectors) ech.insert(v);
  auto inside = [&](std::vector<Q> w) {
    ech.reduce(w);
    for (const auto& x : w)
      if (sgn(x) != 0) return false;
    return true;
  };
  ConnectionCurvature cc = connection_curvature(p, conn);
  bool flat = true, par = true, iso = true;
  for (const auto& v : vs.vectors) {
    for (const auto& m : cc.lambda)
      for (const auto& x : kt::apply(m, v)) flat = flat && sgn(x) == 0;
    for (const auto& m : conn.alpha) par = par && inside(kt::apply(m, v));
    for (const auto& m : conn.rho) iso = iso && inside(kt::apply(m, v));
  }
  r.add(name + ".flat", flat);
  r.add(name + ".alpha_invariant", par);
  r.add(name + ".rho_invariant", iso);
  return r;
}

}  // namespace kt
