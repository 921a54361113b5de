#include "wheelperc/matchings.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wheelperc {

bool is_noncrossing_involution(const std::vector<int>& pr) {
  const int m = static_cast<int>(pr.size());
  if (m % 2) return false;
  for (int i = 1; i <= m; ++i) {
    int j = pr[i - 1];
    if (j < 1 || j > m || j == i || pr[j - 1] != i) return false;
  }
  // noncrossing iff the arcs nest like parentheses
  std::vector<int> stack;
  for (int i = 1; i <= m; ++i) {
    int j = pr[i - 1];
    if (j > i) {
      stack.push_back(i);
    } else {
      if (stack.empty() || stack.back() != j) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

Matching::Matching(std::vector<int> pairing) : pairing_(std::move(pairing)) {
  if (!is_noncrossing_involution(pairing_)) throw std::invalid_argument("not a noncrossing matching");
}

std::vector<int> Matching::steps() const {
  std::vector<int> s(pairing_.size());
  for (int i = 1; i <= size(); ++i) s[i - 1] = partner(i) > i ? 1 : -1;
  return s;
}

std::vector<int> Matching::openers() const {
  std::vector<int> a;
  for (int i = 1; i <= size(); ++i)
    if (partner(i) > i) a.push_back(i);
  return a;
}

std::vector<std::pair<int, int>> Matching::arcs() const {
  std::vector<std::pair<int, int>> r;
  for (int i = 1; i <= size(); ++i)
    if (partner(i) > i) r.emplace_back(i, partner(i));
  return r;
}

std::string Matching::to_json() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (auto [a, b] : arcs()) {
    os << (first ? "" : ",") << "[" << a << "," << b << "]";
    first = false;
  }
  os << "]";
  return os.str();
}

std::string Matching::openers_string() const {
  std::ostringstream os;
  auto a = openers();
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  return os.str();
}

size_t MatchingHash::operator()(const Matching& m) const {
  size_t h = 1469598103934665603ull;
  for (int x : m.pairing()) h = (h ^ static_cast<size_t>(x)) * 1099511628211ull;
  return h;
}

std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

Matching from_steps(const std::vector<int>& steps) {
  std::vector<int> pr(steps.size());
  std::vector<int> stack;
  for (int i = 1; i <= static_cast<int>(steps.size()); ++i) {
    if (steps[i - 1] == 1) {
      stack.push_back(i);
    } else {
      if (stack.empty()) throw std::invalid_argument("not a Dyck word");
      int j = stack.back();
      stack.pop_back();
      pr[i - 1] = j;
      pr[j - 1] = i;
    }
  }
  if (!stack.empty()) throw std::invalid_argument("not a Dyck word");
  return Matching(std::move(pr));
}

std::vector<Matching> enumerate(int n) {
  if (n < 0) throw std::invalid_argument("negative order");
  std::vector<Matching> out;
  std::vector<int> steps(2 * n);
  auto rec = [&](auto&& self, int pos, int opened, int height) -> void {
    if (pos == 2 * n) {
      out.push_back(from_steps(steps));
      return;
    }
    if (opened < n) {
      steps[pos] = 1;
      self(self, pos + 1, opened + 1, height + 1);
    }
    if (height > 0) {
      steps[pos] = -1;
      self(self, pos + 1, opened, height - 1);
    }
  };
  rec(rec, 0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Basis::Basis(int n) : n_(n), list_(enumerate(n)) {
  for (int i = 0; i < dim(); ++i) idx_.emplace(list_[i], i);
}

int Basis::index(const Matching& m) const {
  auto it = idx_.find(m);
  if (it == idx_.end()) throw std::out_of_range("matching not in basis");
  return it->second;
}

const Basis& basis(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Basis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Basis>(n);
  return *slot;
}

bool is_opener_sequence(const std::vector<int>& a) {
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 1 || a[j] > 2 * static_cast<int>(j) + 1) return false;
    if (j > 0 && a[j] <= a[j - 1]) return false;
  }
  return true;
}

bool is_weak_sequence(const std::vector<int>& a) {
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 1 || a[j] > 2 * static_cast<int>(j) + 1) return false;
    if (j > 0 && a[j] < a[j - 1]) return false;
  }
  return true;
}

Matching from_openers(const std::vector<int>& a) {
  if (!is_opener_sequence(a)) throw std::invalid_argument("invalid opener sequence");
  const int n = static_cast<int>(a.size());
  std::vector<int> steps(2 * n, -1);
  for (int x : a) steps[x - 1] = 1;
  return from_steps(steps);
}

Matching from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
  if (static_cast<int>(arcs.size()) != n) throw std::invalid_argument("wrong number of arcs");
  std::vector<int> pr(2 * n, 0);
  for (auto [a, b] : arcs) {
    if (a < 1 || b < 1 || a > 2 * n || b > 2 * n || pr[a - 1] || pr[b - 1])
      throw std::invalid_argument("bad arc list");
    pr[a - 1] = b;
    pr[b - 1] = a;
  }
  return Matching(std::move(pr));
}

Matching parse_matching(const std::string& s) {
  auto first = s.find_first_not_of(" \t");
  if (first != std::string::npos && s[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bad matching JSON: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("matching JSON must be an array of arcs");
    std::vector<std::pair<int, int>> arcs;
    for (auto& arc : j) {
      if (!arc.is_array() || arc.size() != 2) throw std::invalid_argument("arc must be [a,b]");
      arcs.emplace_back(arc[0].get<int>(), arc[1].get<int>());
    }
    return from_arcs(static_cast<int>(arcs.size()), arcs);
  }
  std::vector<int> a;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      a.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad opener list: " + s);
    }
  }
  return from_openers(a);
}

Matching pi_min(int n) {
  std::vector<int> a(n);
  for (int j = 0; j < n; ++j) a[j] = j + 1;
  return from_openers(a);
}

Matching pi_max(int n) {
  std::vector<int> a(n);
  for (int j = 0; j < n; ++j) a[j] = 2 * j + 1;
  return from_openers(a);
}

Matching apply_e(int k, const Matching& p) {
  const int m = p.size();
  if (k < 1 || k > m) throw std::out_of_range("e_k index out of range");
  const int k1 = k == m ? 1 : k + 1;
  if (p.partner(k) == k1) return p;
  std::vector<int> pr = p.pairing();
  int a = p.partner(k), b = p.partner(k1);
  pr[k - 1] = k1;
  pr[k1 - 1] = k;
  pr[a - 1] = b;
  pr[b - 1] = a;
  return Matching(std::move(pr));
}

static Matching shift(const Matching& p, int s) {
  const int m = p.size();
  std::vector<int> pr(m);
  for (int i = 1; i <= m; ++i) {
    int ni = ((i - 1 + s) % m + m) % m + 1;
    int nj = ((p.partner(i) - 1 + s) % m + m) % m + 1;
    pr[ni - 1] = nj;
  }
  return Matching(std::move(pr));
}

Matching rotate(const Matching& p) { return p.size() ? shift(p, 1) : p; }
Matching rotate_inv(const Matching& p) { return p.size() ? shift(p, -1) : p; }

Matching delete_little_arc(const Matching& p, int j) {
  if (j < 1 || j >= p.size() || p.partner(j) != j + 1) throw std::invalid_argument("not a little arc");
  std::vector<int> pr;
  auto relabel = [j](int x) { return x < j ? x : x - 2; };
  for (int i = 1; i <= p.size(); ++i) {
    if (i == j || i == j + 1) continue;
    pr.push_back(relabel(p.partner(i)));
  }
  return Matching(std::move(pr));
}

Matching nest(const Matching& p, int depth) {
  if (depth < 0) throw std::invalid_argument("negative nesting depth");
  const int m = p.size();
  std::vector<int> pr(m + 2 * depth);
  for (int i = 1; i <= depth; ++i) {
    pr[i - 1] = m + 2 * depth + 1 - i;
    pr[m + 2 * depth - i] = i;
  }
  for (int i = 1; i <= m; ++i) pr[depth + i - 1] = p.partner(i) + depth;
  return Matching(std::move(pr));
}

std::vector<int> nest_openers(const std::vector<int>& a, int depth) {
  std::vector<int> r;
  for (int i = 1; i <= depth; ++i) r.push_back(i);
  for (int x : a) r.push_back(x + depth);
  return r;
}

bool is_submatching(const Matching& sub, const Matching& p, int offset) {
  if (offset < 1 || offset + sub.size() - 1 > p.size()) throw std::out_of_range("submatching window out of range");
  for (int i = 1; i <= sub.size(); ++i)
    if (p.partner(offset + i - 1) != sub.partner(i) + offset - 1) return false;
  return true;
}

std::vector<int> young(const Matching& p) {
  auto a = p.openers();
  std::vector<int> parts;
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] - static_cast<int>(j) - 1 > 0) parts.push_back(a[j] - static_cast<int>(j) - 1);
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

bool precedes(const Matching& p, const Matching& s) {
  if (p.order() != s.order()) throw std::invalid_argument("order mismatch");
  auto a = young(p), b = young(s);
  if (a.size() > b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::optional<int> covers_at(const Matching& p, const Matching& s) {
  if (p.order() != s.order()) throw std::invalid_argument("order mismatch");
  auto x = p.steps(), y = s.steps();
  std::optional<int> found;
  for (int i = 0; i < p.size(); ++i) {
    if (x[i] == y[i]) continue;
    if (i + 1 < p.size() && x[i] == 1 && x[i + 1] == -1 && y[i] == -1 && y[i + 1] == 1 && !found) {
      found = i + 1;
      ++i;
      continue;
    }
    return std::nullopt;
  }
  return found;
}

}  // namespace wheelperc
