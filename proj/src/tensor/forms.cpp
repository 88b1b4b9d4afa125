#include "kt/tensor/forms.hpp"

#include <stdexcept>

namespace kt {

static void subsets_rec(int n, int p, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (int(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_rec(n, p, i + 1, cur, out);
    cur.pop_back();
  }
}

FormBlocks::FormBlocks(int n_, int p_) : n(n_), p(p_) {
  std::vector<int> cur;
  subsets_rec(n, p, 0, cur, subsets);
}

int FormBlocks::index(const std::vector<int>& s) const {
  for (std::size_t i = 0; i < subsets.size(); ++i)
    if (subsets[i] == s) return int(i);
  throw std::invalid_argument("FormBlocks: not an increasing subset");
}

SpMat wedge_partial(int n, int p, const std::vector<SpMat>& d) {
  if (int(d.size()) != n) throw std::invalid_argument("wedge_partial: need one map per form index");
  const int du = d[0].rows, dv = d[0].cols;
  FormBlocks src(n, p), dst(n, p + 1);
  std::vector<SparseVec> cols(std::size_t(src.count()) * dv);
  for (int t = 0; t < dst.count(); ++t) {
    const auto& s = dst.subsets[t];
    for (int i = 0; i <= p; ++i) {
      std::vector<int> rest;
      for (int j = 0; j <= p; ++j)
        if (j != i) rest.push_back(s[j]);
      const int si = src.index(rest);
      const SpMat& m = d[s[i]];
      const Q sign = (i % 2) ? Q(-1) : Q(1);
      for (int c = 0; c < dv; ++c)
        for (int q = m.ptr[c]; q < m.ptr[c + 1]; ++q)
          cols[std::size_t(si) * dv + c].emplace_back(t * du + m.idx[q], sign * m.val[q]);
    }
  }
  return sparse_from_columns(dst.count() * du, cols);
}

SpMat stack_forms(const std::vector<SpMat>& per_form) { return vstack(per_form); }

}  // namespace kt
