#include "kron/partitions.hpp"

#include <stdexcept>

namespace kron {

long WeightedPartition::total() const {
  long t = 0;
  for (const auto& [l, a] : parts) t += l * a;
  return t;
}

long WeightedPartition::hat() const {
  long h = 0;
  for (const auto& [l, a] : parts) h += a;
  return h;
}

long WeightedPartition::tilde() const { return total() - hat(); }

long WeightedPartition::mult(long l) const {
  auto it = parts.find(l);
  return it == parts.end() ? 0 : it->second;
}

bool WeightedPartition::is_trivial() const {
  for (const auto& [l, a] : parts)
    if (l != 1) return false;
  return true;
}

std::vector<long> WeightedPartition::part_list() const {
  std::vector<long> out;
  for (const auto& [l, a] : parts)
    for (long i = 0; i < a; ++i) out.push_back(l);
  return out;
}

WeightedPartition WeightedPartition::trivial(long a) {
  if (a < 1) throw std::invalid_argument("trivial partition of non-positive integer");
  return WeightedPartition{{{1, a}}};
}

std::string WeightedPartition::text() const {
  std::string out;
  for (const auto& [l, a] : parts) {
    if (!out.empty()) out += "+";
    out += std::to_string(l) + "*" + std::to_string(a);
  }
  return out;
}

WeightedPartition WeightedPartition::parse(const std::string& s) {
  WeightedPartition p;
  size_t pos = 0;
  if (s.empty()) throw std::invalid_argument("empty partition literal");
  while (pos < s.size()) {
    size_t star = s.find('*', pos);
    if (star == std::string::npos)
      throw std::invalid_argument("partition literal must look like \"1*2+2*1\": " + s);
    size_t plus = s.find('+', star);
    std::string ls = s.substr(pos, star - pos);
    std::string as = s.substr(star + 1, (plus == std::string::npos ? s.size() : plus) - star - 1);
    long l, a;
    try {
      l = std::stol(ls);
      a = std::stol(as);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number in partition literal: " + s);
    }
    if (p.parts.count(l)) throw std::invalid_argument("duplicate part size in literal: " + s);
    p.parts[l] = a;
    pos = (plus == std::string::npos) ? s.size() : plus + 1;
  }
  p.validate();
  return p;
}

nlohmann::json WeightedPartition::to_json() const {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [l, a] : parts) obj[std::to_string(l)] = a;
  return nlohmann::json{{"parts", obj}};
}

WeightedPartition WeightedPartition::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("parts") || !j["parts"].is_object())
    throw std::invalid_argument("partition JSON must be {\"parts\": {\"l\": mult, ...}}");
  WeightedPartition p;
  for (const auto& [k, v] : j["parts"].items()) {
    long l;
    try {
      l = std::stol(k);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad part size key in partition JSON: " + k);
    }
    if (p.parts.count(l)) throw std::invalid_argument("duplicate part size in partition JSON");
    p.parts[l] = v.get<long>();
  }
  p.validate();
  return p;
}

void WeightedPartition::validate() const {
  for (const auto& [l, a] : parts) {
    if (l < 1) throw std::invalid_argument("partition part size must be >= 1");
    if (a < 1) throw std::invalid_argument("partition multiplicity must be >= 1");
  }
}

bool partition_less(const WeightedPartition& p, const WeightedPartition& q) {
  return p.part_list() < q.part_list();
}

std::string PartitionPair::text() const { return a.text() + " | " + b.text(); }

PartitionPair PartitionPair::parse(const std::string& s) {
  auto bar = s.find('|');
  if (bar == std::string::npos) {
    throw std::invalid_argument("partition pair must look like \"1*2 | 1*3\": " + s);
  }
  auto trim = [](const std::string& part) {
    std::size_t b = part.find_first_not_of(" \t");
    std::size_t e = part.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty half in partition pair");
    return part.substr(b, e - b + 1);
  };
  return PartitionPair{WeightedPartition::parse(trim(s.substr(0, bar))),
                       WeightedPartition::parse(trim(s.substr(bar + 1)))};
}

nlohmann::json PartitionPair::to_json() const {
  return nlohmann::json{{"a", a.to_json()}, {"b", b.to_json()}};
}

PartitionPair PartitionPair::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b"))
    throw std::invalid_argument("partition pair JSON must be {\"a\": ..., \"b\": ...}");
  return PartitionPair{WeightedPartition::from_json(j["a"]), WeightedPartition::from_json(j["b"])};
}

namespace {

void gen_partitions(long remaining, long min_part, std::vector<long>& cur,
                    std::vector<WeightedPartition>& out) {
  if (remaining == 0) {
    WeightedPartition p;
    for (long l : cur) ++p.parts[l];
    out.push_back(std::move(p));
    return;
  }
  for (long l = min_part; l <= remaining; ++l) {
    cur.push_back(l);
    gen_partitions(remaining - l, l, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<WeightedPartition> enumerate_partitions(long a) {
  if (a < 1) throw std::invalid_argument("enumerate_partitions requires a >= 1");
  std::vector<WeightedPartition> out;
  std::vector<long> cur;
  gen_partitions(a, 1, cur, out);
  return out;
}

BigRational mps_coefficient(const PartitionPair& pair) {
  pair.a.validate();
  pair.b.validate();
  if (pair.a.parts.empty() || pair.b.parts.empty())
    throw std::invalid_argument("mps_coefficient requires non-empty partitions");
  BigRational coeff(1);
  std::map<long, long> sizes;  // l -> a_l + b_l over both partitions
  for (const auto& [l, a] : pair.a.parts) sizes[l] += a;
  for (const auto& [l, b] : pair.b.parts) sizes[l] += b;
  for (const auto& [l, both] : sizes) {
    BigInteger den = factorial(pair.a.mult(l)) * factorial(pair.b.mult(l)) *
                     pow_integer(BigInteger(l), 2 * static_cast<unsigned long>(both));
    bool negative = (both * (l - 1)) % 2 != 0;
    coeff *= make_rational(BigInteger(negative ? -1 : 1), den);
  }
  return coeff;
}

BigInteger composition_count(long a, long ahat) {
  if (a < 1) throw std::invalid_argument("composition_count requires a >= 1");
  return binomial(a - 1, ahat - 1);
}

BigInteger composition_count_partition_sum(long a, long ahat) {
  if (a < 1) throw std::invalid_argument("composition_count_partition_sum requires a >= 1");
  BigInteger sum = 0;
  for (const auto& p : enumerate_partitions(a)) {
    if (p.hat() != ahat) continue;
    BigInteger term = factorial(p.hat());
    for (const auto& [l, m] : p.parts) term /= factorial(m);
    sum += term;
  }
  return sum;
}

HpFloat partition_count_bound(long a) {
  if (a < 1) throw std::invalid_argument("partition_count_bound requires a >= 1");
  HpFloat t(make_rational(2 * a, 3), MPFR_RNDU);
  HpFloat root = sqrt_hp(t, MPFR_RNDU);
  HpFloat arg = mul(HpFloat::pi(MPFR_RNDU), root, MPFR_RNDU);
  return exp_hp(arg, MPFR_RNDU);
}

}  // namespace kron
