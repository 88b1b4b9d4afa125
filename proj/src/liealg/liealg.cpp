#include "kt/liealg/liealg.hpp"

#include <algorithm>
#include <stdexcept>

namespace kt {

Q LieAlgebra::c(int i, int j, int k) const {
  for (const auto& [kk, v] : bracket(i, j))
    if (kk == k) return v;
  return Q(0);
}

void LieAlgebra::set(int i, int j, int k, const Q& v) {
  auto& b = br[std::size_t(i) * dim + j];
  for (auto it = b.begin(); it != b.end(); ++it)
    if (it->first == k) {
      if (is_zero(v))
        b.erase(it);
      else
        it->second = v;
      return;
    }
  if (!is_zero(v)) {
    b.emplace_back(k, v);
    std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
}

std::vector<Q> LieAlgebra::bracket(const std::vector<Q>& x, const std::vector<Q>& y) const {
  std::vector<Q> out(dim);
  for (int i = 0; i < dim; ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; j < dim; ++j) {
      if (is_zero(y[j])) continue;
      Q f = x[i] * y[j];
      for (const auto& [k, v] : bracket(i, j)) out[k] += f * v;
    }
  }
  return out;
}

QMat LieAlgebra::ad(int i) const {
  QMat m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (const auto& [k, v] : bracket(i, j)) m(k, j) = v;
  return m;
}

QMat LieAlgebra::killing_form() const {
  QMat b(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Q s;
      for (int p = 0; p < dim; ++p)
        for (const auto& [q, v] : bracket(i, p)) s += v * c(j, q, p);
      b(i, j) = s;
      b(j, i) = s;
    }
  return b;
}

// Flattened entries, row-major.
static std::vector<Q> flat(const QMat& x) { return x.a; }

MatrixCoordinates::MatrixCoordinates(const std::vector<QMat>& basis)
    : dim_(int(basis.size())),
      entries_(basis.empty() ? 0 : basis[0].rows * basis[0].cols),
      ech_(entries_ + dim_) {
  for (int i = 0; i < dim_; ++i) {
    std::vector<Q> r = flat(basis[i]);
    r.resize(std::size_t(entries_ + dim_));
    r[entries_ + i] = 1;
    if (!ech_.insert(std::move(r))) throw std::invalid_argument("MatrixCoordinates: dependent basis");
  }
  ech_.make_reduced();
}

std::vector<Q> MatrixCoordinates::operator()(const QMat& x) const {
  std::vector<Q> r = flat(x);
  r.resize(std::size_t(entries_ + dim_));
  ech_.reduce(r);
  for (int j = 0; j < entries_; ++j)
    if (!is_zero(r[j])) throw std::invalid_argument("MatrixCoordinates: matrix outside the span");
  std::vector<Q> out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = -r[entries_ + i];
  return out;
}

LieAlgebra from_matrices(const std::vector<QMat>& basis) {
  MatrixCoordinates coord(basis);
  const int d = int(basis.size());
  LieAlgebra g(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      QMat br = basis[i] * basis[j] - basis[j] * basis[i];
      auto c = coord(br);
      for (int k = 0; k < d; ++k)
        if (!is_zero(c[k])) {
          g.set(i, j, k, c[k]);
          g.set(j, i, k, -c[k]);
        }
    }
  return g;
}

LieAlgebra change_basis(const LieAlgebra& g, const QMat& p) {
  const int d = g.dim;
  QMat pinv = inverse(p);
  LieAlgebra out(d);
  std::vector<std::vector<Q>> cols(d);
  for (int i = 0; i < d; ++i) cols[i] = p.column(i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      auto b = pinv * g.bracket(cols[i], cols[j]);
      for (int k = 0; k < d; ++k)
        if (!is_zero(b[k])) {
          out.set(i, j, k, b[k]);
          out.set(j, i, k, -b[k]);
        }
    }
  return out;
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void Report::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

namespace {

QMat unit_matrix(int n, int i, int j) {
  QMat m(n, n);
  m(i, j) = 1;
  return m;
}

// Real form [[A, −B], [B, A]] of A + iB.
QMat realify(const QMat& a, const QMat& b) {
  const int n = a.rows;
  QMat m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(n + i, n + j) = a(i, j);
      m(i, n + j) = -b(i, j);
      m(n + i, j) = b(i, j);
    }
  return m;
}

QMat block_diag(const QMat& x, const QMat& y) {
  QMat m(x.rows + y.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) m(i, j) = x(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < y.cols; ++j) m(x.rows + i, x.cols + j) = y(i, j);
  return m;
}

QMat diag(const std::vector<Q>& d) {
  QMat m(int(d.size()), int(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
  return m;
}

// Matrix of an involution of a matrix algebra in the given basis.
template <class F>
QMat involution_matrix(const std::vector<QMat>& basis, F f) {
  MatrixCoordinates coord(basis);
  QMat t(int(basis.size()), int(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) t.set_column(int(i), coord(f(basis[i])));
  return t;
}

// Conjugation by a diagonal ±1 matrix.
QMat conj_diag(const QMat& x, const QMat& d) { return d * x * d; }

std::vector<QMat> combine(const std::vector<QMat>& basis, const SubspaceBasis& s) {
  std::vector<QMat> out;
  for (const auto& v : s.vectors) {
    QMat m(basis[0].rows, basis[0].cols);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!is_zero(v[i])) m = m + v[i] * basis[i];
    out.push_back(m);
  }
  return out;
}

// Complex J = [[0, I], [−I, 0]] of size 2n, in real form of size 4n.
QMat quaternionic_j(int n) {
  QMat j(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = -1;
  }
  return realify(j, QMat(2 * n, 2 * n));
}

// Complex conjugation in real form of size 2n.
QMat conj_real(int n) {
  std::vector<Q> d(2 * n, Q(1));
  for (int i = n; i < 2 * n; ++i) d[i] = -1;
  return diag(d);
}

// X ↦ J X̄ J⁻¹ on real forms of size 2m, m even.
QMat theta_j(const QMat& x) {
  const int m = x.rows / 2;
  QMat j = quaternionic_j(m / 2);
  QMat c = conj_real(m);
  QMat jinv = Q(-1) * j;
  return j * (c * x * c) * jinv;
}

// Real form of a complex diagonal matrix with real entries.
QMat complex_diag(const std::vector<Q>& d) {
  std::vector<Q> dd(d);
  dd.insert(dd.end(), d.begin(), d.end());
  return diag(dd);
}

}  // namespace

std::vector<QMat> so_basis(int n) {
  std::vector<QMat> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(unit_matrix(n, i, j) - unit_matrix(n, j, i));
  return out;
}

std::vector<QMat> su_basis(int n) {
  std::vector<QMat> out;
  QMat z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(realify(unit_matrix(n, i, j) - unit_matrix(n, j, i), z));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(realify(z, unit_matrix(n, i, j) + unit_matrix(n, j, i)));
  for (int k = 0; k + 1 < n; ++k) out.push_back(realify(z, unit_matrix(n, k, k) - unit_matrix(n, k + 1, k + 1)));
  return out;
}

std::vector<QMat> sp_basis(int n) {
  auto su = su_basis(2 * n);
  QMat t = involution_matrix(su, theta_j);
  QMat tm = t - QMat::identity(t.rows);
  return combine(su, kernel(tm));
}

SymmetricPair make_pair(const std::string& label, const LieAlgebra& g, const QMat& theta) {
  const int d = g.dim;
  if (theta.rows != d || theta.cols != d) throw std::invalid_argument("make_pair: theta dimension");
  auto mvecs = kernel(theta + QMat::identity(d));
  auto kvecs = kernel(theta - QMat::identity(d));
  if (mvecs.dim() + kvecs.dim() != d) throw std::invalid_argument("make_pair: theta is not an involution");
  QMat p(d, d);
  for (int i = 0; i < mvecs.dim(); ++i) p.set_column(i, mvecs.vectors[i]);
  for (int i = 0; i < kvecs.dim(); ++i) p.set_column(mvecs.dim() + i, kvecs.vectors[i]);
  SymmetricPair sp;
  sp.label = label;
  sp.n = mvecs.dim();
  sp.kdim = kvecs.dim();
  sp.g = change_basis(g, p);
  std::vector<Q> td(d, Q(1));
  for (int i = 0; i < sp.n; ++i) td[i] = -1;
  sp.theta = diag(td);
  QMat b = sp.g.killing_form();
  sp.metric = QMat(sp.n, sp.n);
  for (int a = 0; a < sp.n; ++a)
    for (int c = 0; c < sp.n; ++c) sp.metric(a, c) = -b(a, c);
  sp.flat = sp.metric.is_zero() && sp.kdim == 0;
  if (sp.flat) sp.metric = QMat::identity(sp.n);
  return sp;
}

static SymmetricPair from_matrix_involution(const std::string& label, const std::vector<QMat>& basis,
                                            const QMat& theta_mat) {
  return make_pair(label, from_matrices(basis), theta_mat);
}

PairSpec parse_space(const std::string& id) {
  PairSpec s;
  auto colon = id.find(':');
  s.family = id.substr(0, colon);
  if (colon == std::string::npos) {
    if (s.family == "custom") return s;
    throw std::invalid_argument("space id needs parameters: " + id);
  }
  std::string rest = id.substr(colon + 1);
  if (s.family == "group") {
    std::size_t i = 0;
    while (i < rest.size() && !std::isdigit(static_cast<unsigned char>(rest[i])) && rest[i] != ':') ++i;
    s.subfamily = rest.substr(0, i);
    if (i < rest.size() && rest[i] == ':') ++i;
    rest = rest.substr(i);
  }
  try {
    std::size_t pos = 0;
    s.params.push_back(std::stoi(rest, &pos));
    if (pos != rest.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad space parameters: " + id);
  }
  return s;
}

std::vector<std::string> catalog_families() {
  return {"sphere:n", "cp:m", "hp:k", "slso:n", "su2n_spn:n", "group:su<n>", "group:so<n>", "group:sp<n>", "flat:n", "custom"};
}

SymmetricPair build_catalog(const std::string& id) { return build_catalog(parse_space(id)); }

SymmetricPair build_catalog(const PairSpec& s) {
  auto need = [&](int lo) {
    if (s.params.size() != 1 || s.params[0] < lo)
      throw std::invalid_argument(s.family + ": parameter must be >= " + std::to_string(lo));
    return s.params[0];
  };
  if (s.family == "sphere") {
    int n = need(2);
    std::vector<Q> d(n + 1, Q(1));
    d[0] = -1;
    QMat dm = diag(d);
    auto basis = so_basis(n + 1);
    return from_matrix_involution("sphere:" + std::to_string(n), basis,
                                  involution_matrix(basis, [&](const QMat& x) { return conj_diag(x, dm); }));
  }
  if (s.family == "cp") {
    int m = need(1);
    std::vector<Q> d(m + 1, Q(1));
    d[0] = -1;
    QMat dm = complex_diag(d);
    auto basis = su_basis(m + 1);
    return from_matrix_involution("cp:" + std::to_string(m), basis,
                                  involution_matrix(basis, [&](const QMat& x) { return conj_diag(x, dm); }));
  }
  if (s.family == "hp") {
    int k = need(1);
    std::vector<Q> d(2 * (k + 1), Q(1));
    d[0] = -1;
    d[k + 1] = -1;
    QMat dm = complex_diag(d);
    auto basis = sp_basis(k + 1);
    return from_matrix_involution("hp:" + std::to_string(k), basis,
                                  involution_matrix(basis, [&](const QMat& x) { return conj_diag(x, dm); }));
  }
  if (s.family == "slso") {
    int n = need(2);
    QMat c = conj_real(n);
    auto basis = su_basis(n);
    return from_matrix_involution("slso:" + std::to_string(n), basis,
                                  involution_matrix(basis, [&](const QMat& x) { return c * x * c; }));
  }
  if (s.family == "su2n_spn") {
    int n = need(2);
    auto basis = su_basis(2 * n);
    return from_matrix_involution("su2n_spn:" + std::to_string(n), basis, involution_matrix(basis, theta_j));
  }
  if (s.family == "flat") {
    int n = need(1);
    LieAlgebra g(n);
    std::vector<Q> d(n, Q(-1));
    SymmetricPair p = make_pair("flat:" + std::to_string(n), g, diag(d));
    return p;
  }
  if (s.family == "group") {
    std::vector<QMat> hb;
    int n = s.params.empty() ? 0 : s.params[0];
    if (s.subfamily == "su") {
      need(2);
      hb = su_basis(n);
    } else if (s.subfamily == "so") {
      need(3);
      hb = so_basis(n);
    } else if (s.subfamily == "sp") {
      need(1);
      hb = sp_basis(n);
    } else {
      throw std::invalid_argument("group: unknown factor " + s.subfamily);
    }
    const int h = int(hb.size());
    QMat z(hb[0].rows, hb[0].cols);
    std::vector<QMat> basis;
    for (const auto& x : hb) basis.push_back(block_diag(x, z));
    for (const auto& x : hb) basis.push_back(block_diag(z, x));
    QMat swap(2 * h, 2 * h);
    for (int i = 0; i < h; ++i) {
      swap(h + i, i) = 1;
      swap(i, h + i) = 1;
    }
    LieAlgebra g = from_matrices(basis);
    SymmetricPair p = make_pair("group:" + s.subfamily + std::to_string(n), g, swap);
    // Recover the adapted m basis to read off the first-factor projection.
    auto mvecs = kernel(swap + QMat::identity(2 * h));
    GroupData gd;
    gd.hdim = h;
    gd.h = from_matrices(hb);
    gd.psi = QMat(h, p.n);
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < h; ++j) gd.psi(j, i) = mvecs.vectors[i][j];
    p.group = std::move(gd);
    return p;
  }
  throw std::invalid_argument("unknown space family: " + s.family);
}

Report validate_algebra(const LieAlgebra& g) {
  Report r;
  const int d = g.dim;
  bool anti = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (const auto& [k, v] : g.bracket(i, j))
        if (g.c(j, i, k) != -v) anti = false;
  r.add("antisymmetry", anti);
  bool jac = true;
  for (int i = 0; i < d && jac; ++i)
    for (int j = i + 1; j < d && jac; ++j)
      for (int k = j + 1; k < d && jac; ++k) {
        std::vector<Q> s(d);
        auto acc = [&](int x, int y, int z) {
          for (const auto& [p, v] : g.bracket(x, y))
            for (const auto& [q, w] : g.bracket(p, z)) s[q] += v * w;
        };
        acc(i, j, k);
        acc(j, k, i);
        acc(k, i, j);
        for (const auto& x : s)
          if (!is_zero(x)) jac = false;
      }
  r.add("jacobi", jac);
  QMat b = g.killing_form();
  bool inv = true;
  for (int x = 0; x < d && inv; ++x) {
    QMat adx = g.ad(x);
    QMat t = adx.transpose() * b + b * adx;
    if (!t.is_zero()) inv = false;
  }
  r.add("killing_form_invariant", inv);
  return r;
}

static bool positive_definite(const QMat& m) {
  // Symmetric Gaussian elimination: all pivots must be positive.
  QMat a = m;
  const int n = a.rows;
  for (int k = 0; k < n; ++k) {
    if (sgn(a(k, k)) <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      Q f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

Report validate(const SymmetricPair& p) {
  Report r = validate_algebra(p.g);
  const int d = p.g.dim, n = p.n;
  r.add("dimensions", p.n + p.kdim == d);
  r.add("theta_involution", p.theta * p.theta == QMat::identity(d));
  bool autom = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<Q> ei(d), ej(d);
      ei[i] = 1;
      ej[j] = 1;
      auto lhs = p.theta * p.g.bracket(ei, ej);
      auto rhs = p.g.bracket(p.theta * ei, p.theta * ej);
      if (lhs != rhs) autom = false;
    }
  r.add("theta_automorphism", autom);
  bool grading = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      bool want_k = (i < n) == (j < n);
      for (const auto& [k, v] : p.g.bracket(i, j))
        if ((k >= n) != want_k) grading = false;
    }
  r.add("bracket_grading", grading);
  bool sym = p.metric == p.metric.transpose();
  r.add("metric_symmetric", sym);
  r.add("metric_positive_definite", sym && positive_definite(p.metric));
  bool adinv = true;
  for (int a = n; a < d; ++a) {
    QMat m(n, n);
    for (int x = 0; x < n; ++x)
      for (const auto& [k, v] : p.g.bracket(a, x)) m(k, x) = v;
    if (!(m.transpose() * p.metric + p.metric * m).is_zero()) adinv = false;
  }
  r.add("metric_ad_invariant", adinv);
  return r;
}

}  // namespace kt
