// Tate sum decompositions of GL_n, Grassmannians, flag varieties, Stiefel
// varieties, the automorphism bundles A(n_1,...,n_r) and the reduced motives
// of the quotients X_m, plus the splitting verifier.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tatecalc/tate.hpp"

namespace tatecalc::catalog {

/// Strictly increasing list of nonnegative integers n_1 < ... < n_r, r >= 1.
class Signature {
public:
  /// Throws InvalidArgument naming the violated constraint.
  explicit Signature(std::vector<int> entries);
  Signature(std::initializer_list<int> entries) : Signature(std::vector<int>(entries)) {}

  /// Parses "1,2,3".
  static Signature parse(const std::string& text);

  const std::vector<int>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int front() const { return entries_.front(); }
  int back() const { return entries_.back(); }
  /// (n_1, ..., n_{r-1}); throws when r == 1.
  Signature without_last() const;
  /// (m, n_1, ..., n_r); throws unless m < n_1.
  Signature prepended(int m) const;

  friend bool operator==(const Signature&, const Signature&) = default;

private:
  std::vector<int> entries_;
};

std::string to_string(const Signature& sig);

/// Weakly increasing m-tuples with entries in [0, bound], lexicographic.
std::vector<std::vector<int>> bounded_partitions(int m, int bound);

TateMotive motive_gl(int n);
TateMotive motive_gr(int m, int n);
TateMotive motive_fl(const Signature& sig);
TateMotive motive_v(int m, int n);
TateMotive motive_a(const Signature& sig);

/// Direct sum over increasing I in {1..n_1} with |I| >= m of M(Fl(sig)) twisted by d(I).
TateMotive reduced_motive_x(int m, const Signature& sig);

struct BijectionEntry {
  std::vector<int> partition;  // lambda_1 <= ... <= lambda_m <= n1 - m
  IndexSequence sequence;      // (lambda_1 + 1, ..., lambda_m + m)
};

/// lambda -> (lambda_1+1, ..., lambda_m+m), in lexicographic order of lambda.
std::vector<BijectionEntry> height_bijection(int m, int n1);

struct Mismatch {
  Bidegree degree;
  Count expected;
  Count actual;
};

/// First bidegree (canonical order) where the multiplicities differ.
std::optional<Mismatch> first_mismatch(const TateMotive& expected, const TateMotive& actual);

struct SplittingReport {
  int n = 0;
  Count reduced_rank;            // summands of M(GL_n) minus the base point
  std::vector<Count> per_m;      // index m-1 holds the summand count of the m-th piece
  Count matched;                 // summands of the assembled right-hand side
  std::optional<Mismatch> mismatch;
  bool passed = false;
};

/// Checks M(GL_n) minus R(0)[0] against the sum over m of M(Gr(m,n)) twisted by d(1..m).
SplittingReport verify_splitting(int n);

std::string to_text(const SplittingReport& r);
nlohmann::json to_json(const SplittingReport& r);

struct BijectionReport {
  Signature signature;
  struct Level {
    int m;
    Count summands;  // Chow height m summands on each side
    std::optional<Mismatch> mismatch;
    bool bidegrees_match;  // d(1..m) + (2N,N) == d(lambda + (1..m)) for every lambda
  };
  std::vector<Level> levels;
  bool passed = false;
};

/// For every 0 <= m < n_1: M(A(m, sig)) and M(A(sig)) have the same Chow height m summands.
BijectionReport check_bijection(const Signature& sig);

std::string to_text(const BijectionReport& r);
nlohmann::json to_json(const BijectionReport& r);

}  // namespace tatecalc::catalog
