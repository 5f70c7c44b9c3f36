#include "tsd/cyclotomic.hpp"

#include "tsd/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tsd {

long euler_phi(long n) {
    if (n <= 0) throw std::invalid_argument("euler_phi expects n > 0");
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// quotient of exact integer polynomial division (constant term first)
std::vector<Int> exact_div(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    long dn = static_cast<long>(rem.size()) - 1;
    long dd = static_cast<long>(den.size()) - 1;
    std::vector<Int> quot(static_cast<size_t>(dn - dd + 1), Int(0));
    for (long k = dn - dd; k >= 0; --k) {
        Int q = rem[static_cast<size_t>(k + dd)] / den.back(); // den monic in our uses
        quot[static_cast<size_t>(k)] = q;
        if (q == 0) continue;
        for (long i = 0; i <= dd; ++i)
            rem[static_cast<size_t>(k + i)] -= q * den[static_cast<size_t>(i)];
    }
    for (const Int& r : rem)
        if (r != 0) throw std::logic_error("inexact polynomial division");
    return quot;
}

std::map<long, std::vector<Int>>& phi_cache() {
    static std::map<long, std::vector<Int>> cache;
    return cache;
}
std::mutex& phi_mutex() {
    static std::mutex m;
    return m;
}

std::vector<Int> cyclotomic_poly_impl(long n) {
    auto& cache = phi_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // x^n - 1 divided by the product of all lower-order cyclotomic factors
    std::vector<Int> num(static_cast<size_t>(n) + 1, Int(0));
    num[0] = -1;
    num[static_cast<size_t>(n)] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d) continue;
        num = exact_div(num, cyclotomic_poly_impl(d));
    }
    cache[n] = num;
    return num;
}

} // namespace

std::vector<Int> Cyclo::cyclotomic_poly(long n) {
    if (n <= 0) throw std::invalid_argument("conductor must be positive");
    if (n == 1) return {Int(-1), Int(1)};
    std::lock_guard<std::mutex> lock(phi_mutex());
    return cyclotomic_poly_impl(n);
}

Cyclo::Cyclo(long n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("conductor must be positive");
    c_.assign(static_cast<size_t>(euler_phi(n)), Int(0));
}

Cyclo Cyclo::integer(long n, const Int& value) {
    Cyclo z(n);
    z.c_[0] = value;
    return z;
}

Cyclo Cyclo::root(long n, long k) {
    Cyclo z(n);
    long e = ((k % n) + n) % n;
    std::vector<Int> raw(static_cast<size_t>(e) + 1, Int(0));
    raw[static_cast<size_t>(e)] = 1;
    z.reduce(std::move(raw));
    return z;
}

void Cyclo::reduce(std::vector<Int> raw) {
    // fold exponents with zeta^n == 1, then reduce modulo the cyclotomic polynomial
    size_t n = static_cast<size_t>(n_);
    std::vector<Int> folded(n, Int(0));
    for (size_t i = 0; i < raw.size(); ++i)
        if (raw[i] != 0) folded[i % n] += raw[i];

    std::vector<Int> phi = cyclotomic_poly(n_);
    size_t deg = phi.size() - 1; // = euler_phi(n_), phi monic
    for (size_t k = n; k-- > deg;) {
        if (folded[k] == 0) continue;
        Int q = folded[k];
        for (size_t i = 0; i < phi.size(); ++i)
            folded[k - deg + i] -= q * phi[i];
    }
    c_.assign(folded.begin(), folded.begin() + static_cast<long>(deg));
}

bool Cyclo::is_zero() const {
    for (const Int& x : c_)
        if (x != 0) return false;
    return true;
}

std::optional<Int> Cyclo::as_integer() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return std::nullopt;
    return c_[0];
}

Cyclo Cyclo::operator-() const {
    Cyclo out = *this;
    for (Int& x : out.c_) x = -x;
    return out;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
    if (n_ != o.n_) throw std::invalid_argument("conductor mismatch; lift explicitly");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
    if (n_ != o.n_) throw std::invalid_argument("conductor mismatch; lift explicitly");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
    if (n_ != o.n_) throw std::invalid_argument("conductor mismatch; lift explicitly");
    std::vector<Int> raw(c_.size() + o.c_.size(), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            raw[i + j] += c_[i] * o.c_[j];
        }
    }
    Cyclo out(n_);
    out.reduce(std::move(raw));
    return out;
}

Cyclo& Cyclo::operator*=(const Int& k) {
    for (Int& x : c_) x *= k;
    return *this;
}

Cyclo Cyclo::lifted(long m) const {
    if (m % n_) throw std::invalid_argument("lift target must be a conductor multiple");
    if (m == n_) return *this;
    long stride = m / n_;
    std::vector<Int> raw(static_cast<size_t>(m), Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) raw[(i * static_cast<size_t>(stride)) % static_cast<size_t>(m)] += c_[i];
    Cyclo out(m);
    out.reduce(std::move(raw));
    return out;
}

Cyclo Cyclo::galois(long m) const {
    long mm = ((m % n_) + n_) % n_;
    if (std::gcd(mm, n_) != 1)
        throw std::invalid_argument("galois exponent must be coprime to the conductor");
    std::vector<Int> raw(static_cast<size_t>(n_), Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) raw[(i * static_cast<size_t>(mm)) % static_cast<size_t>(n_)] += c_[i];
    Cyclo out(n_);
    out.reduce(std::move(raw));
    return out;
}

Cyclo Cyclo::conj() const {
    if (n_ == 1) return *this;
    return galois(n_ - 1);
}

std::string Cyclo::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Int a = c_[i];
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (i == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "z" << n_;
            if (i > 1) os << "^" << i;
        }
    }
    return first ? "0" : os.str();
}

Cyclo sqrt_as_cyclo(long f, long m) {
    if (f <= 0) throw std::invalid_argument("sqrt_as_cyclo expects f > 0");
    if (m % 8) throw std::invalid_argument("conductor must be divisible by 8");
    Cyclo out = Cyclo::integer(m, 1);
    long rest = f;
    if (rest % 2 == 0) {
        rest /= 2;
        if (rest % 2 == 0) throw std::invalid_argument("f must be squarefree");
        // sqrt(2) = zeta_8 + zeta_8^-1
        out *= Cyclo::root(m, m / 8) + Cyclo::root(m, -(m / 8));
    }
    for (long p = 3; rest > 1; p += 2) {
        if (rest % p) continue;
        rest /= p;
        if (rest % p == 0) throw std::invalid_argument("f must be squarefree");
        if (m % p) throw std::invalid_argument("conductor lacks an odd prime of f");
        // quadratic Gauss sum: sum of legendre(a,p) * zeta_p^a equals
        // sqrt(p) for p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4
        Cyclo g(m);
        for (long a = 1; a < p; ++a) {
            Int la(a), lp(p);
            int leg = mpz_legendre(la.get_mpz_t(), lp.get_mpz_t());
            Cyclo term = Cyclo::root(m, a * (m / p));
            if (leg < 0) term = -term;
            g += term;
        }
        if (p % 4 == 3) g = g * Cyclo::root(m, -(m / 4)); // multiply by -i
        out = out * g;
    }
    return out;
}

} // namespace tsd
