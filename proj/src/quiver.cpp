#include "kron/quiver.hpp"

#include <numeric>
#include <stdexcept>

namespace kron {

namespace {

void check_levels(const std::vector<SupportVertex>& vs, const char* side) {
  for (const auto& v : vs) {
    if (v.level < 1) {
      throw std::invalid_argument(std::string("support ") + side + " vertex '" + v.label +
                                  "' has non-positive level");
    }
  }
}

// Level-weighted sum of d over one side; every key of d must name a vertex.
BigInteger side_sum(const std::vector<SupportVertex>& vs, const DimVector& d) {
  BigInteger s = 0;
  for (const auto& v : vs) {
    auto it = d.find(v.label);
    if (it == d.end()) continue;
    if (it->second < 0) {
      throw std::invalid_argument("negative dimension at vertex '" + v.label + "'");
    }
    s += BigInteger(v.level) * BigInteger(it->second);
  }
  return s;
}

void check_keys(const SupportQuiver& q, const DimVector& d) {
  for (const auto& [label, value] : d) {
    (void)value;
    if (q.source_index(label) < 0 && q.sink_index(label) < 0) {
      throw std::invalid_argument("dimension vector names unknown vertex '" + label + "'");
    }
  }
}

// All level-weighted subset sums of one side, as an achievability table
// indexed 0..total.
std::vector<char> subset_sums(const std::vector<SupportVertex>& vs, long total) {
  std::vector<char> can(static_cast<std::size_t>(total) + 1, 0);
  can[0] = 1;
  for (const auto& v : vs) {
    for (long s = total - v.level; s >= 0; --s) {
      if (can[static_cast<std::size_t>(s)]) can[static_cast<std::size_t>(s + v.level)] = 1;
    }
  }
  return can;
}

}  // namespace

SupportQuiver::SupportQuiver(std::vector<SupportVertex> sources, std::vector<SupportVertex> sinks)
    : sources_(std::move(sources)), sinks_(std::move(sinks)) {
  check_levels(sources_, "source");
  check_levels(sinks_, "sink");
}

SupportQuiver SupportQuiver::from_pair(const PartitionPair& pair) {
  pair.a.validate();
  pair.b.validate();
  std::vector<SupportVertex> sources, sinks;
  for (const auto& [size, mult] : pair.a.parts) {
    for (long k = 1; k <= mult; ++k) {
      sources.push_back({"i_" + std::to_string(size) + "_" + std::to_string(k), size});
    }
  }
  for (const auto& [size, mult] : pair.b.parts) {
    for (long k = 1; k <= mult; ++k) {
      sinks.push_back({"j_" + std::to_string(size) + "_" + std::to_string(k), size});
    }
  }
  return SupportQuiver(std::move(sources), std::move(sinks));
}

long SupportQuiver::a_total() const {
  long s = 0;
  for (const auto& v : sources_) s += v.level;
  return s;
}

long SupportQuiver::b_total() const {
  long s = 0;
  for (const auto& v : sinks_) s += v.level;
  return s;
}

WeightedPartition SupportQuiver::source_partition() const {
  WeightedPartition p;
  for (const auto& v : sources_) ++p.parts[v.level];
  return p;
}

WeightedPartition SupportQuiver::sink_partition() const {
  WeightedPartition p;
  for (const auto& v : sinks_) ++p.parts[v.level];
  return p;
}

int SupportQuiver::source_index(const std::string& label) const {
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (sources_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

int SupportQuiver::sink_index(const std::string& label) const {
  for (std::size_t i = 0; i < sinks_.size(); ++i) {
    if (sinks_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

nlohmann::json SupportQuiver::to_json() const {
  nlohmann::json j;
  j["sources"] = nlohmann::json::array();
  j["sinks"] = nlohmann::json::array();
  for (const auto& v : sources_) j["sources"].push_back({{"label", v.label}, {"level", v.level}});
  for (const auto& v : sinks_) j["sinks"].push_back({{"label", v.label}, {"level", v.level}});
  return j;
}

SupportQuiver SupportQuiver::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("sources") || !j.contains("sinks")) {
    throw std::invalid_argument("support quiver JSON needs 'sources' and 'sinks' arrays");
  }
  auto read_side = [](const nlohmann::json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("support quiver side is not an array");
    std::vector<SupportVertex> vs;
    for (const auto& e : arr) {
      if (!e.is_object() || !e.contains("label") || !e.contains("level")) {
        throw std::invalid_argument("support quiver vertex needs 'label' and 'level'");
      }
      vs.push_back({e.at("label").get<std::string>(), e.at("level").get<long>()});
    }
    return vs;
  };
  return SupportQuiver(read_side(j.at("sources")), read_side(j.at("sinks")));
}

BigRational slope(const SupportQuiver& q, const DimVector& d) {
  check_keys(q, d);
  BigInteger num = side_sum(q.sources(), d);
  BigInteger kappa = num + side_sum(q.sinks(), d);
  if (kappa == 0) throw std::invalid_argument("slope of the zero dimension vector");
  return make_rational(num, kappa);
}

BigInteger king_theta(const SupportQuiver& q, const DimVector& d, const DimVector& e, long m) {
  if (m < 1) throw std::invalid_argument("arrow multiplicity m must be positive");
  check_keys(q, d);
  check_keys(q, e);
  BigInteger sd = side_sum(q.sources(), d);
  BigInteger td = side_sum(q.sinks(), d);
  BigInteger se = side_sum(q.sources(), e);
  BigInteger te = side_sum(q.sinks(), e);
  return BigInteger(m) * (sd * te - se * td);
}

BigInteger support_euler_form(const SupportQuiver& q, const DimVector& d, const DimVector& e,
                              long m) {
  if (m < 1) throw std::invalid_argument("arrow multiplicity m must be positive");
  check_keys(q, d);
  check_keys(q, e);
  auto at = [](const DimVector& v, const std::string& label) {
    auto it = v.find(label);
    return it == v.end() ? 0L : it->second;
  };
  BigInteger s = 0;
  for (const auto& v : q.sources()) s += BigInteger(at(d, v.label)) * at(e, v.label);
  for (const auto& v : q.sinks()) s += BigInteger(at(d, v.label)) * at(e, v.label);
  for (const auto& i : q.sources()) {
    for (const auto& j : q.sinks()) {
      BigInteger arrows = BigInteger(m) * i.level * j.level;
      s -= arrows * at(d, i.label) * at(e, j.label);
    }
  }
  return s;
}

BigInteger euler_form(long da, long db, long ea, long eb, long m) {
  return BigInteger(da) * ea + BigInteger(db) * eb - BigInteger(m) * da * eb;
}

bool is_imaginary_schur_root(long a, long b, long m) {
  if (a < 1 || b < 1) throw std::invalid_argument("dimension vector must be positive");
  if (m < 3) throw std::invalid_argument("imaginary Schur root test needs m >= 3");
  return BigInteger(a) * a + BigInteger(b) * b < BigInteger(m) * a * b;
}

long moduli_dimension(long a, long b, long m) {
  BigInteger d = 1 - BigInteger(a) * a - BigInteger(b) * b + BigInteger(m) * a * b;
  if (!d.fits_slong_p()) throw std::overflow_error("moduli dimension exceeds long");
  return d.get_si();
}

Dualities dualities(long a, long b, long m) {
  if (a < 1 || b < 1) throw std::invalid_argument("dimension vector must be positive");
  if (m * a - b < 0) {
    throw std::invalid_argument("reflection m*a - b is negative");
  }
  return Dualities{{b, a}, {a, m * a - b}};
}

bool is_theta_coprime(long a, long b) { return std::gcd(a, b) == 1; }

bool support_slope_tie_free(const SupportQuiver& q) {
  long A = q.a_total();
  long B = q.b_total();
  if (A + B == 0) throw std::invalid_argument("empty support quiver");
  auto src = subset_sums(q.sources(), A);
  auto snk = subset_sums(q.sinks(), B);
  // A sub-dimension vector with source part p and sink part s ties the
  // total slope A/(A+B) exactly when p*B == A*s.
  for (long p = 0; p <= A; ++p) {
    if (!src[static_cast<std::size_t>(p)]) continue;
    for (long s = 0; s <= B; ++s) {
      if (!snk[static_cast<std::size_t>(s)]) continue;
      if (p == 0 && s == 0) continue;
      if (p == A && s == B) continue;
      if (BigInteger(p) * B == BigInteger(A) * s) return false;
    }
  }
  return true;
}

}  // namespace kron
