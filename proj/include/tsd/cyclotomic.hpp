#pragma once

#include "tsd/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsd {

long euler_phi(long n);

// Element of Z[zeta_n] on the power basis 1, zeta, ..., zeta^(phi(n)-1),
// reduced modulo the n-th cyclotomic polynomial.  Operands must share a
// conductor; embed explicitly with lifted() before mixing.
class Cyclo {
public:
    explicit Cyclo(long n);
    static Cyclo integer(long n, const Int& value);
    static Cyclo root(long n, long k); // zeta_n^k, any integer k

    long conductor() const { return n_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const;
    std::optional<Int> as_integer() const;

    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o);
    Cyclo& operator-=(const Cyclo& o);
    Cyclo operator*(const Cyclo& o) const;
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
    Cyclo& operator*=(const Int& k);

    friend Cyclo operator+(Cyclo x, const Cyclo& y) { return x += y; }
    friend Cyclo operator-(Cyclo x, const Cyclo& y) { return x -= y; }
    friend Cyclo operator*(Cyclo x, const Int& k) { return x *= k; }

    friend bool operator==(const Cyclo& x, const Cyclo& y) {
        return x.n_ == y.n_ && x.c_ == y.c_;
    }
    friend bool operator!=(const Cyclo& x, const Cyclo& y) { return !(x == y); }

    // embedding Z[zeta_n] -> Z[zeta_m]; requires n | m
    Cyclo lifted(long m) const;

    // Galois action zeta -> zeta^m; requires gcd(m, n) == 1
    Cyclo galois(long m) const;
    Cyclo conj() const;

    std::string to_string() const;

    // coefficients of the n-th cyclotomic polynomial, constant term first
    static std::vector<Int> cyclotomic_poly(long n);

private:
    void reduce(std::vector<Int> raw); // raw on basis 1..zeta^(len-1), any len

    long n_ = 1;
    std::vector<Int> c_;
};

// sqrt(f) for squarefree f > 0 as an element of Z[zeta_m]; requires 8 | m and
// p | m for every odd prime p dividing f.
Cyclo sqrt_as_cyclo(long f, long m);

} // namespace tsd
