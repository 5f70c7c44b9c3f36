#pragma once

#include "tsd/numeric.hpp"

#include <map>
#include <string>
#include <vector>

namespace tsd {

// Sparse multivariate polynomial over Q.  Variables are kept as a sorted,
// duplicate-free name list; exponent vectors align with that list.  Binary
// operations require both operands to carry the same variable list (embed
// with with_vars first), mirroring the strictness of the file formats built
// on top of this type.
class MPoly {
public:
    using Exponents = std::vector<unsigned>;

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars);

    static MPoly constant(const Rat& c);
    static MPoly var(const std::string& name);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exponents, Rat>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const; // throws unless is_constant()

    unsigned degree_in(const std::string& var) const;

    // embeds into the given superset of variables (sorted automatically)
    MPoly with_vars(std::vector<std::string> vars) const;

    // polynomial coefficient of var^k, a polynomial in the remaining variables
    MPoly coeff_in(const std::string& var, unsigned k) const;

    Rat eval(const std::map<std::string, Rat>& point) const;
    MPoly substitute(const std::string& var, const MPoly& replacement) const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly operator*(const MPoly& o) const;
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly& operator*=(const Rat& c);
    MPoly pow(unsigned k) const;

    friend MPoly operator+(MPoly x, const MPoly& y) { return x += y; }
    friend MPoly operator-(MPoly x, const MPoly& y) { return x -= y; }
    friend MPoly operator*(MPoly x, const Rat& c) { return x *= c; }
    friend MPoly operator*(const Rat& c, MPoly x) { return x *= c; }

    friend bool operator==(const MPoly& x, const MPoly& y);

    std::string to_string() const;

private:
    void check_same_vars(const MPoly& o) const;
    void insert_term(const Exponents& e, const Rat& c);

    std::vector<std::string> vars_;
    std::map<Exponents, Rat> terms_;
};

} // namespace tsd
