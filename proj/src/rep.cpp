#include "sl2surf/rep.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "sl2surf/forms.hpp"

namespace sl2surf {

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
  }
  return "?";
}

int RepDecomposition::ambient_dim() const {
  int total = 0;
  for (int n : dims) total += n + 1;
  return total;
}

int RepDecomposition::interval_of(int q) const {
  for (int s = 0; s < interval_count(); ++s)
    if (q >= intervals[s].first && q <= intervals[s].last) return s;
  throw engine_error("interval_of: block index out of range");
}

RepDecomposition decompose(std::vector<int> dims_unsorted) {
  if (dims_unsorted.empty()) throw engine_error("decompose: empty dimension list");
  for (int n : dims_unsorted)
    if (n < 0) throw engine_error("decompose: negative dimension");

  RepDecomposition rep;
  rep.dims = std::move(dims_unsorted);
  std::sort(rep.dims.begin(), rep.dims.end(), std::greater<int>());

  int p = static_cast<int>(rep.dims.size());
  for (int q = 0; q < p;) {
    int r = q;
    while (r + 1 < p && rep.dims[r + 1] == rep.dims[q]) ++r;
    rep.intervals.push_back({q, r, rep.dims[q], rep.dims[q] % 2 == 0});
    q = r + 1;
  }
  rep.nontrivial = rep.dims.front() > 1;
  return rep;
}

RepDecomposition parse_rep(const std::string& text) {
  std::string body = text;
  auto eq = body.find('=');
  if (eq != std::string::npos) body = body.substr(eq + 1);

  auto last = body.find_last_not_of(" \t");
  if (last == std::string::npos || body[last] == '+')
    throw parse_error("dangling '+' in representation '" + text + "'");

  std::vector<int> dims;
  std::string token;
  std::istringstream in(body);
  while (std::getline(in, token, '+')) {
    // strip whitespace
    auto b = token.find_first_not_of(" \t");
    auto e = token.find_last_not_of(" \t");
    if (b == std::string::npos) throw parse_error("empty summand in representation '" + text + "'");
    token = token.substr(b, e - b + 1);
    try {
      size_t used = 0;
      int n = std::stoi(token, &used);
      if (used != token.size() || n < 0) throw std::invalid_argument(token);
      dims.push_back(n);
    } catch (const std::exception&) {
      throw parse_error("bad summand '" + token + "' in representation '" + text + "'");
    }
  }
  if (dims.empty()) throw parse_error("no summands in representation '" + text + "'");
  return decompose(std::move(dims));
}

std::string format_rep(const RepDecomposition& rep) {
  std::ostringstream out;
  out << "rho = ";
  for (size_t i = 0; i < rep.dims.size(); ++i) {
    if (i) out << "+";
    out << rep.dims[i];
  }
  return out.str();
}

Support support_of(const FactoredElement& x) {
  Support s;
  int q_plus = -1, q_minus = -1;
  for (int q = 0; q < x.rep.block_count(); ++q) {
    if (x.blocks[q].u == 0) continue;
    if (q_plus < 0) q_plus = q;
    q_minus = q;
    int interval = x.rep.interval_of(q);
    if (s.intervals_hit.empty() || s.intervals_hit.back() != interval)
      s.intervals_hit.push_back(interval);
  }
  if (q_plus < 0) throw malformed_element_error("support_of: every block scalar is zero");
  s.q_plus = q_plus;
  s.q_minus = q_minus;

  bool all_even = true, all_odd = true;
  for (int interval : s.intervals_hit) {
    if (x.rep.intervals[interval].even) all_odd = false;
    else all_even = false;
  }
  s.parity = all_even ? Parity::Even : (all_odd ? Parity::Odd : Parity::Mixed);
  return s;
}

}  // namespace sl2surf
