// Bidegrees, pure Tate motives and their two-variable Poincare polynomials.
//
// A pure Tate motive is a finite direct sum of twists R(q)[p]. It is stored as
// a multiset of bidegrees (p,q) with positive multiplicities; equality is
// multiset equality. All operations are pure functions over immutable values.

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace tatecalc {

/// Summand multiplicities and polynomial coefficients. Counts grow like 2^n,
/// so no fixed-width type is used.
using Count = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class NotASubmotive : public Error {
public:
  using Error::Error;
};

struct Bidegree {
  long p = 0;  // cohomological degree
  long q = 0;  // weight

  friend constexpr bool operator==(Bidegree, Bidegree) = default;
  friend constexpr Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
  friend constexpr Bidegree operator-(Bidegree a, Bidegree b) { return {a.p - b.p, a.q - b.q}; }
};

/// Canonical order on bidegrees: lexicographic in (q, p).
struct CanonicalOrder {
  constexpr bool operator()(Bidegree a, Bidegree b) const {
    return std::tie(a.q, a.p) < std::tie(b.q, b.p);
  }
};

struct Tridegree {
  long l = 0;  // Ext degree
  long p = 0;
  long q = 0;

  friend constexpr bool operator==(Tridegree, Tridegree) = default;
  friend constexpr auto operator<=>(Tridegree, Tridegree) = default;
  friend constexpr Tridegree operator+(Tridegree a, Tridegree b) {
    return {a.l + b.l, a.p + b.p, a.q + b.q};
  }
};

/// The Chow height 2q - p.
constexpr long chow_height(Bidegree b) { return 2 * b.q - b.p; }

/// Total Chow height 2q - p - l of a trigraded class.
constexpr long total_chow_height(Tridegree t) { return 2 * t.q - t.p - t.l; }

/// Strictly increasing sequence of positive integers; may be empty.
class IndexSequence {
public:
  IndexSequence() = default;
  /// Throws InvalidArgument unless `indices` is strictly increasing and positive.
  explicit IndexSequence(std::vector<int> indices);
  IndexSequence(std::initializer_list<int> indices) : IndexSequence(std::vector<int>(indices)) {}

  /// {first, first+1, ..., last}; empty when last < first.
  static IndexSequence range(int first, int last);

  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  int operator[](std::size_t i) const { return indices_[i]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  bool contains(int i) const;

  friend bool operator==(const IndexSequence&, const IndexSequence&) = default;
  friend auto operator<=>(const IndexSequence& a, const IndexSequence& b) {
    return a.indices_ <=> b.indices_;
  }

private:
  std::vector<int> indices_;
};

std::string to_string(const IndexSequence& seq);

/// d(i_1,...,i_m) = (sum(2 i_j - 1), sum(i_j)); d() = (0,0).
Bidegree bidegree_d(const IndexSequence& seq);

/// All strictly increasing sequences in {1..n} in lexicographic order,
/// starting with the empty sequence.
std::vector<IndexSequence> increasing_sequences(int n);

/// A finite multiset of bidegrees, i.e. a pure Tate motive.
class TateMotive {
public:
  using SummandMap = std::map<Bidegree, Count, CanonicalOrder>;

  TateMotive() = default;
  TateMotive(std::initializer_list<std::pair<Bidegree, long>> summands);

  /// R(0)[0].
  static TateMotive unit();
  static TateMotive single(Bidegree b, const Count& mult = 1);

  /// Adds `mult` copies of R(b); mult must be positive.
  void add(Bidegree b, const Count& mult = 1);

  const SummandMap& summands() const { return summands_; }
  Count multiplicity(Bidegree b) const;
  /// Total number of Tate summands, counted with multiplicity.
  Count rank() const;
  bool empty() const { return summands_.empty(); }

  friend bool operator==(const TateMotive&, const TateMotive&) = default;

private:
  SummandMap summands_;
};

TateMotive direct_sum(const TateMotive& a, const TateMotive& b);
TateMotive tensor(const TateMotive& a, const TateMotive& b);
TateMotive twist(const TateMotive& a, Bidegree b);

enum class HeightMode { eq, ge };
TateMotive height_filter(const TateMotive& a, long m, HeightMode mode);

/// Complement of the summands of `sub` inside `whole`; throws NotASubmotive
/// if `sub` is not a sub-multiset of `whole`.
TateMotive cone_of_inclusion(const TateMotive& sub, const TateMotive& whole);

/// Two-variable integer polynomial in t (degree p) and u (weight q).
class Poly2 {
public:
  using TermMap = std::map<Bidegree, Count, CanonicalOrder>;

  Poly2() = default;
  static Poly2 constant(const Count& c);
  static Poly2 monomial(Bidegree exponent, const Count& coeff = 1);

  void add_term(Bidegree exponent, const Count& coeff);
  const TermMap& terms() const { return terms_; }
  Count coefficient(Bidegree exponent) const;
  bool is_zero() const { return terms_.empty(); }

  /// Drops every term with u-degree above `max_weight`.
  Poly2 truncated(long max_weight) const;

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2&, const Poly2&) = default;

private:
  TermMap terms_;
};

/// Product truncated to u-degree <= max_weight, without forming the full product.
Poly2 multiply_truncated(const Poly2& a, const Poly2& b, long max_weight);

/// Renders e.g. "1 + t*u + 2*t^4*u^2 - t^3*u^2" in canonical term order.
std::string to_string(const Poly2& poly);

Poly2 poincare(const TateMotive& a);

/// Inverse of poincare; throws InvalidArgument on negative coefficients.
TateMotive motive_from_poincare(const Poly2& poly);

/// "{(0,0), (2,1)x2, (4,2)}".
std::string to_string(const TateMotive& a);

/// {"summands":[{"p":..,"q":..,"mult":..}, ...]} in canonical order. Multiplicities
/// beyond 64 bits are written as decimal strings.
nlohmann::json to_json(const TateMotive& a);
TateMotive motive_from_json(const nlohmann::json& j);

nlohmann::json count_to_json(const Count& c);
Count count_from_json(const nlohmann::json& j);

}  // namespace tatecalc
