#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wheelperc {

// Noncrossing perfect matching of 1..2n. All public indices are 1-based.
class Matching {
 public:
  Matching() = default;
  // pairing[i-1] = partner of i
  explicit Matching(std::vector<int> pairing);

  int order() const { return static_cast<int>(pairing_.size() / 2); }
  int size() const { return static_cast<int>(pairing_.size()); }
  int partner(int i) const { return pairing_[i - 1]; }
  const std::vector<int>& pairing() const { return pairing_; }

  std::vector<int> steps() const;    // +1 opener, -1 closer
  std::vector<int> openers() const;  // positions of +1 steps
  std::vector<std::pair<int, int>> arcs() const;
  std::string to_json() const;       // [[1,2],[3,4]]
  std::string openers_string() const;  // 1,3

  bool operator==(const Matching& o) const { return pairing_ == o.pairing_; }
  bool operator!=(const Matching& o) const { return pairing_ != o.pairing_; }
  bool operator<(const Matching& o) const { return pairing_ < o.pairing_; }

 private:
  std::vector<int> pairing_;
};

struct MatchingHash {
  size_t operator()(const Matching& m) const;
};

bool is_noncrossing_involution(const std::vector<int>& pairing);
std::uint64_t catalan(int n);

// All of NC_n in canonical order (lex order of the partner vector).
std::vector<Matching> enumerate(int n);

// Index lookup for enumerate(n).
class Basis {
 public:
  explicit Basis(int n);
  int order() const { return n_; }
  int dim() const { return static_cast<int>(list_.size()); }
  const Matching& operator[](int i) const { return list_[i]; }
  const std::vector<Matching>& list() const { return list_; }
  int index(const Matching& m) const;

 private:
  int n_;
  std::vector<Matching> list_;
  std::unordered_map<Matching, int, MatchingHash> idx_;
};

const Basis& basis(int n);  // cached, thread-safe

bool is_opener_sequence(const std::vector<int>& a);
bool is_weak_sequence(const std::vector<int>& a);
Matching from_openers(const std::vector<int>& a);
Matching from_steps(const std::vector<int>& steps);
Matching from_arcs(int n, const std::vector<std::pair<int, int>>& arcs);
// JSON arc list "[[1,2],[3,4]]" or opener list "1,3"
Matching parse_matching(const std::string& s);

Matching pi_min(int n);  // n nested arcs
Matching pi_max(int n);  // n little arcs

Matching apply_e(int k, const Matching& p);
Matching rotate(const Matching& p);
Matching rotate_inv(const Matching& p);
Matching delete_little_arc(const Matching& p, int j);
Matching nest(const Matching& p, int depth);
std::vector<int> nest_openers(const std::vector<int>& a, int depth);
bool is_submatching(const Matching& sub, const Matching& p, int offset);

std::vector<int> young(const Matching& p);  // weakly decreasing parts, zeros dropped
bool precedes(const Matching& p, const Matching& s);  // young(p) inside young(s)
// j such that young(s) is young(p) plus one box above positions j, j+1
std::optional<int> covers_at(const Matching& p, const Matching& s);

}  // namespace wheelperc
