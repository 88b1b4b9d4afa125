#include "kt/cli/cli.hpp"

#include <stdexcept>

namespace kt::cli {

bool needs_long(const SymmetricPair& p) { return p.n >= 12; }

Pipeline::Pipeline(SymmetricPair p, const RunConfig& cfg) : p_(std::move(p)), c_(curvature_tensor(p_)), cfg_(cfg) {}

FlatSubspace Pipeline::closure(const InvariantConnection& conn) {
  HolonomyOptions opt;
  opt.fix.backend = cfg_.backend;
  opt.fix.tol = cfg_.tol;
  return parallel_subspace(p_, conn, opt);
}

ObjectResult Pipeline::from_flat(const std::string& name, const FlatSubspace& f) const {
  ObjectResult r;
  r.name = name;
  r.dim = f.dim;
  r.ambient = f.ambient;
  r.certified = f.certified;
  r.method = f.method;
  r.trace = f.trace;
  return r;
}

const ObjectResult& Pipeline::killing1() {
  if (auto it = done_.find("killing1"); it != done_.end()) return it->second;
  k1conn_ = killing1_connection(p_, c_);
  // The exact basis is kept for the symmetric products whatever the backend.
  f1_ = parallel_subspace(p_, *k1conn_);
  ObjectResult r = cfg_.backend == Backend::Exact ? from_flat("killing1", *f1_) : from_flat("killing1", closure(*k1conn_));
  r.extra["dim_g"] = p_.g.dim;
  return done_["killing1"] = r;
}

const ObjectResult& Pipeline::killing2() {
  if (auto it = done_.find("killing2"); it != done_.end()) return it->second;
  if (!needs_long(p_)) {
    k2conn_ = killing2_connection(p_, c_);
    return done_["killing2"] = from_flat("killing2", closure(*k2conn_));
  }
  if (!cfg_.long_run)
    throw std::runtime_error(p_.label + ": killing2 needs --long (about 20 minutes on one core for su2n_spn:3)");
  k2conn_ = killing2_connection(p_, c_, TriangleOption::One, false);
  ObjectResult r;
  r.name = "killing2";
  r.ambient = k2conn_->dim();
  {
    ConnectionCurvature cc = connection_curvature(p_, *k2conn_);
    FloatClosure fc = kernel_closure_float(r.ambient, cc.lambda, k2conn_->alpha, cfg_.tol, true, 64, r.ambient);
    r.trace = fc.trace;
    r.extra["float_dim"] = r.ambient - fc.rank;
  }
  const ObjectResult& d = decomposable();
  DamperBound db = first_damper_bound_modular(p_, *k2conn_);
  const int fdim = r.extra["float_dim"].get<int>();
  r.extra["lower_bound"] = d.dim;
  r.extra["upper_bound"] = db.bound();
  r.extra["damper"] = {{"s2", db.s2}, {"mu", db.mu}, {"rho", db.rho}};
  r.certified = d.certified && d.dim == db.bound() && fdim == d.dim;
  r.dim = r.certified ? d.dim : fdim;
  r.method = r.certified ? "float-sketch+decomposable-lower+modular-damper-upper" : "float-sketch-unconfirmed";
  return done_["killing2"] = r;
}

const ObjectResult& Pipeline::decomposable() {
  if (auto it = done_.find("decomposable"); it != done_.end()) return it->second;
  killing1();
  if (!k2conn_) {
    if (needs_long(p_) && !cfg_.long_run)
      throw std::runtime_error(p_.label + ": decomposable needs --long");
    k2conn_ = killing2_connection(p_, c_, TriangleOption::One, !needs_long(p_));
  }
  // Exact spans are cheap up to n = 5; beyond that the derivation check and a
  // modular rank are used.
  const bool exact = p_.n <= 5;
  Decomposable d = decomposable_subspace(p_, *k1conn_, f1_->vectors(), *k2conn_, exact);
  ObjectResult r;
  r.name = "decomposable";
  r.dim = d.dim;
  r.ambient = k2conn_->dim();
  r.certified = d.certified;
  r.method = d.method;
  r.extra["symmetric_square"] = d.sym_dim;
  r.extra["kernel"] = d.kernel_dim;
  return done_["decomposable"] = r;
}

ObjectResult Pipeline::object(const std::string& name) {
  if (name == "killing1") return killing1();
  if (name == "killing2") return killing2();
  if (name == "decomposable") return decomposable();
  if (name == "hidden") {
    const ObjectResult& k2 = killing2();
    const ObjectResult& d = decomposable();
    HiddenReport q = quotient_ranks(c_);
    ObjectResult r;
    r.name = "hidden";
    r.dim = k2.dim - d.dim;
    r.ambient = k2.dim;
    // A modular rank can only undercount Δ, so a zero is exact while a
    // positive value is an upper bound.
    r.certified = k2.certified && d.certified && (d.method == "exact" || r.dim == 0);
    r.method = "killing2-minus-decomposable";
    r.extra["p_rank"] = q.p_rank;
    r.extra["q_rank"] = q.q_rank;
    return r;
  }
  if (name == "ky3") return from_flat("ky3", closure(ky_connection(p_, c_)));
  if (name == "affine") return from_flat("affine", closure(affine_connection(p_, c_)));
  throw std::invalid_argument("unknown object: " + name);
}

}  // namespace kt::cli
