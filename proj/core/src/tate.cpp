#include "tatecalc/tate.hpp"

#include <limits>
#include <sstream>

namespace tatecalc {

IndexSequence::IndexSequence(std::vector<int> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1)
      throw InvalidArgument("index sequence entries must be positive: " + to_string(*this));
    if (i > 0 && indices_[i - 1] >= indices_[i])
      throw InvalidArgument("index sequence must be strictly increasing: " + to_string(*this));
  }
}

IndexSequence IndexSequence::range(int first, int last) {
  std::vector<int> v;
  for (int i = first; i <= last; ++i)
    v.push_back(i);
  return IndexSequence(std::move(v));
}

bool IndexSequence::contains(int i) const {
  for (int x : indices_)
    if (x == i)
      return true;
  return false;
}

std::string to_string(const IndexSequence& seq) {
  std::string s = "(";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(seq[i]);
  }
  return s + ")";
}

Bidegree bidegree_d(const IndexSequence& seq) {
  Bidegree b;
  for (int i : seq) {
    b.p += 2L * i - 1;
    b.q += i;
  }
  return b;
}

namespace {

void extend_sequences(int next, int n, std::vector<int>& prefix, std::vector<IndexSequence>& out) {
  out.emplace_back(prefix);
  for (int i = next; i <= n; ++i) {
    prefix.push_back(i);
    extend_sequences(i + 1, n, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<IndexSequence> increasing_sequences(int n) {
  std::vector<IndexSequence> out;
  std::vector<int> prefix;
  extend_sequences(1, n, prefix, out);
  return out;
}

// TateMotive -----------------------------------------------------------------

TateMotive::TateMotive(std::initializer_list<std::pair<Bidegree, long>> summands) {
  for (const auto& [b, mult] : summands)
    add(b, mult);
}

TateMotive TateMotive::unit() { return single({0, 0}); }

TateMotive TateMotive::single(Bidegree b, const Count& mult) {
  TateMotive m;
  m.add(b, mult);
  return m;
}

void TateMotive::add(Bidegree b, const Count& mult) {
  if (mult <= 0)
    throw InvalidArgument("Tate summand multiplicities must be positive");
  summands_[b] += mult;
}

Count TateMotive::multiplicity(Bidegree b) const {
  auto it = summands_.find(b);
  return it == summands_.end() ? Count(0) : it->second;
}

Count TateMotive::rank() const {
  Count total = 0;
  for (const auto& [b, mult] : summands_)
    total += mult;
  return total;
}

TateMotive direct_sum(const TateMotive& a, const TateMotive& b) {
  TateMotive out = a;
  for (const auto& [deg, mult] : b.summands())
    out.add(deg, mult);
  return out;
}

TateMotive tensor(const TateMotive& a, const TateMotive& b) {
  TateMotive out;
  for (const auto& [da, ma] : a.summands())
    for (const auto& [db, mb] : b.summands())
      out.add(da + db, ma * mb);
  return out;
}

TateMotive twist(const TateMotive& a, Bidegree b) {
  TateMotive out;
  for (const auto& [deg, mult] : a.summands())
    out.add(deg + b, mult);
  return out;
}

TateMotive height_filter(const TateMotive& a, long m, HeightMode mode) {
  TateMotive out;
  for (const auto& [deg, mult] : a.summands()) {
    const long h = chow_height(deg);
    if (mode == HeightMode::eq ? h == m : h >= m)
      out.add(deg, mult);
  }
  return out;
}

TateMotive cone_of_inclusion(const TateMotive& sub, const TateMotive& whole) {
  TateMotive::SummandMap rest = whole.summands();
  for (const auto& [deg, mult] : sub.summands()) {
    auto it = rest.find(deg);
    if (it == rest.end() || it->second < mult) {
      std::ostringstream os;
      os << "summand (" << deg.p << "," << deg.q << ") occurs " << mult
         << " times in the source but only " << (it == rest.end() ? Count(0) : it->second)
         << " times in the target";
      throw NotASubmotive(os.str());
    }
    it->second -= mult;
    if (it->second == 0)
      rest.erase(it);
  }
  TateMotive out;
  for (const auto& [deg, mult] : rest)
    out.add(deg, mult);
  return out;
}

// Poly2 ----------------------------------------------------------------------

Poly2 Poly2::constant(const Count& c) { return monomial({0, 0}, c); }

Poly2 Poly2::monomial(Bidegree exponent, const Count& coeff) {
  Poly2 p;
  p.add_term(exponent, coeff);
  return p;
}

void Poly2::add_term(Bidegree exponent, const Count& coeff) {
  if (coeff == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Count Poly2::coefficient(Bidegree exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Count(0) : it->second;
}

Poly2 Poly2::truncated(long max_weight) const {
  Poly2 out;
  for (const auto& [e, c] : terms_)
    if (e.q <= max_weight)
      out.terms_.emplace(e, c);
  return out;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_)
    add_term(e, -c);
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      out.add_term(ea + eb, ca * cb);
  return out;
}

Poly2 multiply_truncated(const Poly2& a, const Poly2& b, long max_weight) {
  Poly2 out;
  for (const auto& [ea, ca] : a.terms()) {
    if (ea.q > max_weight)
      break;  // terms are ordered by weight first
    for (const auto& [eb, cb] : b.terms()) {
      if (ea.q + eb.q > max_weight)
        break;
      out.add_term(ea + eb, ca * cb);
    }
  }
  return out;
}

namespace {

std::string power(char var, long e) {
  std::string s(1, var);
  if (e != 1)
    s += "^" + std::to_string(e);
  return s;
}

}  // namespace

std::string to_string(const Poly2& poly) {
  if (poly.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : poly.terms()) {
    const bool negative = c < 0;
    const Count mag = negative ? Count(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;

    std::string vars;
    if (e.p != 0)
      vars += power('t', e.p);
    if (e.q != 0) {
      if (!vars.empty())
        vars += '*';
      vars += power('u', e.q);
    }
    if (vars.empty())
      out += mag.str();
    else if (mag == 1)
      out += vars;
    else
      out += mag.str() + "*" + vars;
  }
  return out;
}

Poly2 poincare(const TateMotive& a) {
  Poly2 p;
  for (const auto& [deg, mult] : a.summands())
    p.add_term(deg, mult);
  return p;
}

TateMotive motive_from_poincare(const Poly2& poly) {
  TateMotive m;
  for (const auto& [e, c] : poly.terms()) {
    if (c < 0)
      throw InvalidArgument("polynomial has a negative coefficient; not a Poincare polynomial");
    m.add(e, c);
  }
  return m;
}

std::string to_string(const TateMotive& a) {
  std::string s = "{";
  bool first = true;
  for (const auto& [deg, mult] : a.summands()) {
    if (!first)
      s += ", ";
    first = false;
    s += "(" + std::to_string(deg.p) + "," + std::to_string(deg.q) + ")";
    if (mult != 1)
      s += "x" + mult.str();
  }
  return s + "}";
}

nlohmann::json count_to_json(const Count& c) {
  if (c >= 0 && c <= std::numeric_limits<std::uint64_t>::max())
    return c.convert_to<std::uint64_t>();
  if (c < 0 && c >= std::numeric_limits<std::int64_t>::min())
    return c.convert_to<std::int64_t>();
  return c.str();
}

Count count_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned())
    return Count(j.get<std::uint64_t>());
  if (j.is_number_integer())
    return Count(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
      throw InvalidArgument("malformed integer string: " + s);
    return Count(s);
  }
  throw InvalidArgument("expected an integer, got " + j.dump());
}

nlohmann::json to_json(const TateMotive& a) {
  auto arr = nlohmann::json::array();
  for (const auto& [deg, mult] : a.summands())
    arr.push_back({{"p", deg.p}, {"q", deg.q}, {"mult", count_to_json(mult)}});
  return {{"summands", arr}};
}

TateMotive motive_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("summands") || !j.at("summands").is_array())
    throw InvalidArgument("motive JSON must be an object with a \"summands\" array");
  TateMotive m;
  for (const auto& s : j.at("summands")) {
    if (!s.is_object() || !s.contains("p") || !s.contains("q") || !s.contains("mult"))
      throw InvalidArgument("summand entries need p, q and mult: " + s.dump());
    m.add({s.at("p").get<long>(), s.at("q").get<long>()}, count_from_json(s.at("mult")));
  }
  return m;
}

}  // namespace tatecalc
