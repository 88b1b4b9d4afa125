#include "kt/numerics/rational.hpp"

#include <stdexcept>

namespace kt {

Q parse_rational(std::string_view s) {
  std::string t(s);
  while (!t.empty() && (t.front() == ' ')) t.erase(t.begin());
  while (!t.empty() && (t.back() == ' ')) t.pop_back();
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  if (t.front() == '+') t.erase(t.begin());
  Q q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + t);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + t);
  q.canonicalize();
  return q;
}

std::string to_string(const Q& q) { return q.get_str(10); }

}  // namespace kt
