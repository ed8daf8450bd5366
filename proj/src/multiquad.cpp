#include "mpslab/multiquad.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "mpslab/error.hpp"

namespace mpslab {

namespace {

PrimeUniverse joint_universe(const PrimeUniverse& a, const PrimeUniverse& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (*a != *b) throw InvalidArgument("MultiQuad operands use different prime universes");
  return a;
}

}  // namespace

PrimeUniverse make_universe(std::vector<std::uint64_t> primes) {
  if (primes.size() > kMaxUniversePrimes) {
    throw CapacityError("prime universe of size " + std::to_string(primes.size()) +
                        " exceeds " + std::to_string(kMaxUniversePrimes));
  }
  std::set<std::uint64_t> seen;
  for (auto p : primes) {
    if (!seen.insert(p).second) {
      throw InvalidArgument("prime " + std::to_string(p) + " repeated in universe");
    }
  }
  return std::make_shared<const std::vector<std::uint64_t>>(std::move(primes));
}

Monomial Monomial::single(std::size_t index) {
  if (index >= kMaxUniversePrimes) throw CapacityError("monomial index out of range");
  Monomial m;
  m.words[index / 64] = std::uint64_t{1} << (index % 64);
  return m;
}

MultiQuad::MultiQuad(const mpq_class& rational) {
  add_term(Monomial{}, rational);
}

MultiQuad MultiQuad::sqrt_prime(PrimeUniverse universe, std::size_t index, const mpq_class& coeff) {
  if (!universe || index >= universe->size()) {
    throw InvalidArgument("prime index outside the universe");
  }
  MultiQuad q;
  q.universe_ = std::move(universe);
  q.add_term(Monomial::single(index), coeff);
  return q;
}

mpz_class MultiQuad::radicand(const Monomial& m) const {
  mpz_class r = 1;
  if (m.empty()) return r;
  for (std::size_t i = 0; i < universe_->size(); ++i) {
    if (m.test(i)) r *= static_cast<unsigned long>((*universe_)[i]);
  }
  return r;
}

void MultiQuad::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();  // callers may pass e.g. 2/4
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

double MultiQuad::to_double() const {
  long double acc = 0.0L;
  for (const auto& [m, c] : terms_) {
    long double root = 1.0L;
    if (!m.empty()) {
      for (std::size_t i = 0; i < universe_->size(); ++i) {
        if (m.test(i)) root *= std::sqrt(static_cast<long double>((*universe_)[i]));
      }
    }
    acc += static_cast<long double>(c.get_d()) * root;
  }
  return static_cast<double>(acc);
}

Interval MultiQuad::enclose(unsigned bits) const {
  Interval out{0, 0};
  const mpz_class denom = mpz_class(1) << bits;
  for (const auto& [m, c] : terms_) {
    const mpz_class r = radicand(m);
    const mpz_class scaled = r << (2 * bits);
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    const mpq_class lo(s, denom);
    const mpq_class hi(s * s == scaled ? s : s + 1, denom);
    if (c >= 0) {
      out.lo += c * lo;
      out.hi += c * hi;
    } else {
      out.lo += c * hi;
      out.hi += c * lo;
    }
  }
  out.lo.canonicalize();
  out.hi.canonicalize();
  return out;
}

std::string MultiQuad::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<mpz_class, mpq_class>> parts;
  for (const auto& [m, c] : terms_) parts.emplace_back(radicand(m), c);
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, c] : parts) {
    const bool negative = c < 0;
    const mpq_class mag = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (r == 1) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << "sqrt(" << r.get_str() << ')';
    }
  }
  return os.str();
}

MultiQuad MultiQuad::operator-() const {
  MultiQuad out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MultiQuad operator+(const MultiQuad& a, const MultiQuad& b) {
  MultiQuad out = a;
  out.universe_ = joint_universe(a.universe_, b.universe_);
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

MultiQuad operator-(const MultiQuad& a, const MultiQuad& b) { return a + (-b); }

MultiQuad operator*(const MultiQuad& a, const MultiQuad& b) {
  MultiQuad out;
  out.universe_ = joint_universe(a.universe_, b.universe_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      // sqrt(p) * sqrt(p) = p for every prime in both monomials.
      const Monomial shared = ma & mb;
      mpq_class c = ca * cb;
      if (!shared.empty()) c *= mpq_class(out.radicand(shared));
      out.add_term(ma ^ mb, c);
    }
  }
  return out;
}

bool operator==(const MultiQuad& a, const MultiQuad& b) {
  if (a.terms_ != b.terms_) return false;
  // A missing universe means a plain rational; equal terms then suffice.
  if (!a.universe_ || !b.universe_ || a.universe_ == b.universe_) return true;
  return *a.universe_ == *b.universe_;
}

MultiQuad mq_add(const MultiQuad& a, const MultiQuad& b) { return a + b; }
MultiQuad mq_mul(const MultiQuad& a, const MultiQuad& b) { return a * b; }
bool mq_is_zero(const MultiQuad& a) { return a.is_zero(); }

}  // namespace mpslab
