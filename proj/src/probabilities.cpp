#include "wheelperc/probabilities.hpp"

#include <algorithm>
#include <stdexcept>

#include "wheelperc/ct.hpp"
#include "wheelperc/dynamics.hpp"

namespace wheelperc {

namespace {

void check_brute_n(int n, int max_n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > max_n)
    throw std::invalid_argument("n=" + std::to_string(n) + " above the exact-solve cap " + std::to_string(max_n));
}

BigRational det(std::vector<std::vector<BigRational>> m) {
  const int d = static_cast<int>(m.size());
  BigRational r = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int i = c; i < d; ++i)
      if (sgn(m[i][c]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      r = -r;
    }
    r *= m[c][c];
    for (int i = c + 1; i < d; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      BigRational f = m[i][c] / m[c][c];
      for (int j = c; j < d; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return r;
}

UPoly in_n_squared(const BigRational& a, const BigRational& b) {  // a n^2 + b
  return UPoly{b, 0, a};
}

UPoly poly_pow(const UPoly& p, int e) {
  UPoly r{1};
  for (int i = 0; i < e; ++i) r = poly_mul(r, p);
  return r;
}

BigRational rat(long n) { return BigRational(n); }

}  // namespace

BigRational prob_brute(int n, const std::function<bool(const Matching&)>& event, int max_n) {
  check_brute_n(n, max_n);
  const Stationary& st = stationary(n);
  const Basis& b = basis(n);
  BigRational s = 0;
  for (int i = 0; i < b.dim(); ++i)
    if (event(b[i])) s += st.mu[i];
  return s;
}

EventProbability prob_submatching_brute(const Matching& pi0, int n, int offset, int max_n) {
  if (pi0.order() > n) throw std::invalid_argument("submatching larger than n");
  check_brute_n(n, max_n);
  if (offset < 1 || offset + pi0.size() - 1 > 2 * n) throw std::out_of_range("submatching window out of range");
  return {prob_brute(n, [&](const Matching& p) { return is_submatching(pi0, p, offset); }, max_n), "brute"};
}

EventProbability prob_submatching_ct(const Matching& pi0, int n, int max_n) {
  const int k = pi0.order();
  if (n <= k) throw std::invalid_argument("ct route needs n >= k+1");
  if (n > max_n) throw std::invalid_argument("ct route capped at n=" + std::to_string(max_n));
  BigRational v(submatching_coefficient(f_polynomial(pi0), n), asm_count(n));
  v.canonicalize();
  return {v, "ct"};
}

BigRational RationalFunction::at(const BigRational& n) const { return poly_eval(num, n) / poly_eval(den, n); }

BigRational RationalFunction::limit() const {
  UPoly a = num, b = den;
  poly_trim(a);
  poly_trim(b);
  if (a.size() != b.size()) throw std::logic_error("limit: degrees differ");
  return a.back() / b.back();
}

RationalFunction r_k(int k) {
  if (k < 1) throw std::invalid_argument("r_k: k must be positive");
  RationalFunction r{{1}, {1}};
  if (k % 2) {
    for (int j = 1; j <= (k + 1) / 2; ++j)
      for (int m = j; m <= 2 * j - 2; ++m) r.num = poly_mul(r.num, in_n_squared(1, -m * m));
    for (int j = 0; j <= (k - 3) / 2; ++j)
      r.den = poly_mul(r.den, poly_pow(in_n_squared(4, -(2 * j + 1) * (2 * j + 1)), (k - 1) / 2 - j));
  } else {
    for (int j = 1; j <= k / 2; ++j)
      for (int m = j; m <= 2 * j - 1; ++m) r.num = poly_mul(r.num, in_n_squared(1, -m * m));
    for (int j = 0; j <= k / 2 - 1; ++j)
      r.den = poly_mul(r.den, poly_pow(in_n_squared(4, -(2 * j + 1) * (2 * j + 1)), k / 2 - j));
  }
  return r;
}

bool anti_cluster(const Matching& p, int k) {
  for (int i = 1; i <= k && i <= p.size(); ++i)
    if (p.partner(i) <= k) return false;
  return true;
}

EventProbability anti_cluster_prob(int k, int n) {
  if (k < 1 || n < k) throw std::invalid_argument("anti_cluster_prob needs n >= k >= 1");
  RationalFunction r = r_k(k);
  BigRational v = r.at(rat(n)) / (r.at(rat(k)) * BigRational(asm_count(k)));
  return {v, "closed-form"};
}

BigRational anti_cluster_brute(int k, int n) {
  return prob_brute(n, [k](const Matching& p) { return anti_cluster(p, k); });
}

static BigInt nested_sum(int k, int d) {
  if (d == 0) return 1;
  BigInt total = 0;
  std::vector<int> a(d);
  std::function<void(int, int)> rec = [&](int i, int start) {
    if (i == d) {
      std::vector<std::vector<BigRational>> m(d, std::vector<BigRational>(d));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          const int j = c + 1;
          m[r][c] = BigRational(binomial(j + k, a[r] - j + k));
        }
      BigRational v = det(std::move(m));
      total += v.get_num();
      return;
    }
    // binom(j+k, a-j+k) vanishes once a > 2j, so a <= 2d
    for (int x = start; x <= 2 * d - (d - 1 - i); ++x) {
      a[i] = x;
      rec(i + 1, x + 1);
    }
  };
  rec(0, 1);
  return total;
}

EventProbability nested_arcs_prob(int k, int n) {
  if (k < 1 || n <= k) throw std::invalid_argument("nested_arcs_prob needs 1 <= k < n");
  BigRational v(nested_sum(k, n - k - 1), asm_count(n));
  v.canonicalize();
  return {v, "closed-form"};
}

Report nested_arcs_calibration(int max_n) {
  Report r;
  r.name = "nested arcs determinant sum vs brute (matrix size n-k-1)";
  for (int n = 2; n <= max_n; ++n)
    for (int k = 1; k < n; ++k) {
      BigRational want = prob_submatching_brute(pi_min(k), n).value;
      BigRational got = nested_arcs_prob(k, n).value;
      r.expect(want == got, "k=" + std::to_string(k) + " n=" + std::to_string(n) + " sum=" + to_string(got) +
                                " brute=" + to_string(want));
    }
  return r;
}

BigInt RationalEventFunction::denominator_at(long n) const { return event_denominator(k, n); }

BigRational RationalEventFunction::value_at(long n) const {
  return poly_eval(g, rat(n * n)) / BigRational(denominator_at(n));
}

BigRational RationalEventFunction::leading() const {
  UPoly t = g;
  poly_trim(t);
  return t.empty() ? BigRational(0) : t.back();
}

std::string RationalEventFunction::q_string() const { return poly_in_n(g); }

RationalEventFunction interpolate_Q(const Matching& pi0) {
  RationalEventFunction q;
  q.pi0 = pi0;
  q.k = pi0.order();
  const int k = q.k;
  if (k < 1) throw std::invalid_argument("interpolate_Q: empty matching");
  const long top = static_cast<long>(k) * (k + 3) / 2 + 1;
  for (long n = k + 1; n <= top; ++n) q.nodes.push_back(n);
  q.witness = top + 1;
  if (q.witness > kCtMaxN) throw std::invalid_argument("interpolate_Q: k too large for the ct route");
  std::vector<std::pair<BigRational, BigRational>> pts;
  for (long n : q.nodes) {
    BigRational p = prob_submatching_ct(pi0, static_cast<int>(n)).value;
    pts.emplace_back(rat(n * n), p * BigRational(event_denominator(k, n)));
  }
  q.g = lagrange_interpolate(pts);
  q.witness_ok = q.value_at(q.witness) == prob_submatching_ct(pi0, static_cast<int>(q.witness)).value;
  q.dyadic = std::all_of(q.g.begin(), q.g.end(), is_dyadic);
  return q;
}

EventProbability halfplane_prob(const RationalEventFunction& q) {
  const unsigned e = static_cast<unsigned>(q.k * (q.k + 1));
  return {q.leading() / pow(BigRational(2), e), "interpolated"};
}

EventProbability halfplane_prob(const Matching& pi0) { return halfplane_prob(interpolate_Q(pi0)); }

EventProbability halfplane_anticluster(int k) {
  if (k < 2) throw std::invalid_argument("halfplane_anticluster needs k >= 2");
  const unsigned e = static_cast<unsigned>((k / 2) * (k / 2 + 1));
  BigRational v = 1 / (pow(BigRational(2), e) * BigRational(asm_count(k)) * r_k(k).at(rat(k)));
  return {v, "closed-form"};
}

BigRational arc_formula(long n) { return BigRational(3, 2) * rat(n * n + 1) / rat(4 * n * n - 1); }

BigRational identity97(long n) {
  BigRational m = rat(n * n);
  return (97 * m * m * m + 82 * m * m - 107 * m - 792) / (8 * (4 * m - 1) * (4 * m - 1) * (4 * m - 9));
}

BigRational identity59(long n) {
  BigRational m = rat(n * n);
  return (59 * m * m * m + 299 * m * m + 866 * m + 576) / (16 * (4 * m - 1) * (4 * m - 1) * (4 * m - 9));
}

BigRational six_point_formula(long n) {
  BigRational m = rat(n * n);
  UPoly c{BigRational(-316353600), BigRational(-17432892), BigRational(1361443), BigRational(-1887916),
          BigRational(-584436),    BigRational(-980692),   BigRational(214093)};
  BigRational d = 512 * pow(4 * m - 1, 3) * pow(4 * m - 9, 2) * (4 * m - 25);
  return poly_eval(c, m) / d;
}

BigRational identity_12_45(long n) {
  BigRational m = rat(n * n);
  return BigRational(135, 16) * (m - 4) * (m * m + 3 * m + 4) / ((4 * m - 1) * (4 * m - 1) * (4 * m - 9));
}

BigRational identity_12_45_printed(long n) {
  BigRational m = rat(n * n);
  return BigRational(15, 16) * (m - 4) * (9 * m * m + 38 * m - 63) / ((4 * m - 1) * (4 * m - 1) * (4 * m - 9));
}

BigRational ac4_formula(long n) {
  BigRational m = rat(n * n);
  return BigRational(33, 8) * (m - 1) * (m - 4) * (m - 9) / ((4 * m - 1) * (4 * m - 1) * (4 * m - 9));
}

BigRational ac5_printed(long n) {
  BigRational m = rat(n * n);
  return BigRational(11, 16) * (m - 1) * (m - 4) * (m - 9) / ((4 * m - 1) * (4 * m - 1) * (4 * m - 9));
}

Report inclusion_exclusion_checks(int n) {
  if (n < 3 || n > 6) throw std::invalid_argument("inclusion_exclusion_checks: n in 3..6");
  Report r;
  r.name = "inclusion-exclusion n=" + std::to_string(n);
  const std::string at = " at n=" + std::to_string(n);
  auto arc = prob_submatching_brute(parse_matching("[[1,2]]"), n).value;
  auto p1234 = prob_submatching_brute(parse_matching("[[1,2],[3,4]]"), n).value;
  auto p12_45 = prob_brute(n, [](const Matching& p) { return p.partner(1) == 2 && p.partner(4) == 5; });
  BigRational ac4 = anti_cluster_brute(4, n), ac5 = anti_cluster_brute(5, n);
  r.expect(arc == arc_formula(n), "arc formula" + at);
  r.expect(ac4 == 1 - 3 * arc + p1234, "AC4 = 1 - 3 P(arc) + P(12-34)" + at);
  r.expect(ac4 == ac4_formula(n), "AC4 display" + at);
  r.expect(p1234 == identity97(n), "97-identity" + at);
  r.expect(ac5 == 1 - 4 * arc + 2 * p1234 + p12_45, "AC5 = 1 - 4 P(arc) + 2 P(12-34) + P(12-45)" + at);
  r.expect(p12_45 == identity_12_45(n), "12-45 identity" + at);
  if (n >= 4) r.expect(ac4 == anti_cluster_prob(4, n).value, "AC4 via R_4" + at);
  if (n >= 5) r.expect(ac5 == anti_cluster_prob(5, n).value, "AC5 via R_5" + at);
  // closed-form route for 12-45: solve the AC5 relation with R_5
  if (n >= 5) {
    BigRational solved = anti_cluster_prob(5, n).value - 1 + 4 * arc_formula(n) - 2 * identity97(n);
    r.expect(solved == identity_12_45(n), "12-45 from R_5 and inclusion-exclusion" + at);
  }
  return r;
}

Report printed_display_checks(int n) {
  if (n < 3 || n > kBruteMaxN) throw std::invalid_argument("printed_display_checks: n in 3..7");
  Report r;
  r.name = "displayed AC5 and 12-45 expressions vs brute n=" + std::to_string(n);
  const std::string at = " at n=" + std::to_string(n);
  auto p12_45 = prob_brute(n, [](const Matching& p) { return p.partner(1) == 2 && p.partner(4) == 5; });
  r.expect(p12_45 == identity_12_45_printed(n), "12-45 display" + at);
  if (n >= 5) r.expect(anti_cluster_brute(5, n) == ac5_printed(n), "AC5 display" + at);
  return r;
}

Report route_agreement(int k_max, int n_max) {
  Report r;
  r.name = "ct route vs brute route";
  for (int k = 1; k <= k_max; ++k)
    for (auto& pi0 : basis(k).list())
      for (int n = k + 1; n <= n_max; ++n) {
        auto a = prob_submatching_ct(pi0, n).value;
        auto b = prob_submatching_brute(pi0, n).value;
        r.expect(a == b, pi0.to_json() + " n=" + std::to_string(n) + " ct=" + to_string(a) + " brute=" + to_string(b));
      }
  return r;
}

}  // namespace wheelperc
