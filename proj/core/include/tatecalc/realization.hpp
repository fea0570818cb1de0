// Rank-level shadow of complex realization: motives collapse to graded ranks,
// the exterior algebra on the unitary generators is graded by word length,
// and the word-length pieces are compared with Thom-shifted Grassmannians.

#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tatecalc/tate.hpp"

namespace tatecalc::realization {

/// Cohomological degree -> rank. Zero ranks are never stored.
using RankTable = std::map<long, Count>;

/// Ranks of the word-length-m part of the exterior algebra on generators of degrees 1, 3, ..., 2n-1.
RankTable unitary_word_length_ranks(int n, int m);

/// Betti numbers of the complex Grassmannian of m-planes in C^n.
RankTable grassmannian_betti(int m, int n);

/// Forgets weights: rank in degree p is the sum of multiplicities over q.
RankTable realize_motive(const TateMotive& a);

/// Degreewise convolution, the rank table of a tensor product.
RankTable convolution(const RankTable& a, const RankTable& b);

RankTable shifted(const RankTable& a, long by);

struct ThomLevel {
  int m = 0;
  RankTable word_length;  // unitary_word_length_ranks(n, m)
  RankTable thom;         // grassmannian_betti(m, n) shifted by m^2
  bool equal = false;
};

struct ThomReport {
  int n = 0;
  std::vector<ThomLevel> levels;
  bool passed = false;
};

ThomReport thom_decomposition_check(int n);

struct QSeriesReport {
  int n = 0;
  Poly2 product;  // prod_{i<=n} (1 + t^{2i-1} u^i)
  Poly2 sum;      // sum_m t^{m^2} u^{m(m+1)/2} G_{m,n}(t^2 u)
  bool passed = false;
};

QSeriesReport qseries_splitting_check(int n);

std::string to_string(const RankTable& r);
nlohmann::json to_json(const RankTable& r);
RankTable rank_table_from_json(const nlohmann::json& j);

std::string to_text(const ThomReport& r);
nlohmann::json to_json(const ThomReport& r);
std::string to_text(const QSeriesReport& r);
nlohmann::json to_json(const QSeriesReport& r);

}  // namespace tatecalc::realization
