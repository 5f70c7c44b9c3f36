#pragma once

#include "tsd/scalar.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tsd {

// Antipodal point configuration X = R u -R on the sphere of squared radius d,
// stored as one representative per antipodal pair.  All moment operations
// account for the doubling, so results refer to the full set X.
class Design {
public:
    Design(long n, Scalar d, long disc, std::vector<std::vector<Scalar>> reps,
           std::string label = "");

    long dim() const { return n_; }
    const Scalar& norm() const { return d_; }
    long disc() const { return disc_; }
    const std::vector<std::vector<Scalar>>& reps() const { return reps_; }
    long rep_count() const { return static_cast<long>(reps_.size()); }
    long size() const { return 2 * rep_count(); } // |X|
    const std::string& label() const { return label_; }

    // "e8", "e7dual", "icosahedron"
    static Design builtin(const std::string& name);
    static const std::vector<std::string>& builtin_names();

private:
    long n_;
    Scalar d_;
    long disc_;
    std::vector<std::vector<Scalar>> reps_;
    std::string label_;
};

Design load_design(std::istream& in);
Design load_design_file(const std::string& path);
void save_design(const Design& dsg, std::ostream& out);
void save_design_file(const Design& dsg, const std::string& path);

Scalar inner(const std::vector<Scalar>& x, const std::vector<Scalar>& y);
Scalar abs_value(const Scalar& s);

// sum over the full set X of (x,alpha)^k; zero for odd k by antipodality
Scalar moment_sum(const Design& dsg, const std::vector<Scalar>& alpha, unsigned k);

// coefficients of the polynomial alpha -> sum over X of (x,alpha)^degree;
// identically zero for odd degree
struct SymmetricMomentTensor {
    long n = 0;
    unsigned degree = 0;
    std::map<std::vector<unsigned>, Scalar> coeff; // zero coefficients omitted

    friend bool operator==(const SymmetricMomentTensor&,
                           const SymmetricMomentTensor&) = default;
};

SymmetricMomentTensor moment_tensor(const Design& dsg, unsigned degree);

// c * (alpha, alpha)^(degree/2) expanded in the same representation
SymmetricMomentTensor power_tensor(long n, unsigned degree, const Scalar& c);

// second-derivative contraction: degree drops by two
SymmetricMomentTensor laplacian(const SymmetricMomentTensor& t);

SymmetricMomentTensor scaled(SymmetricMomentTensor t, const Scalar& c);

// the moment-identity constant for degree 2k: degree 2 -> sd/n,
// degree 4 -> 3sd^2/(n(n+2)), degree 6 -> 15sd^3/(n(n+2)(n+4))
Scalar moment_constant(const Design& dsg, unsigned degree);

struct StrengthCertificate {
    int t = 0;
    bool pass = false;
    struct Mismatch {
        unsigned degree = 0;
        std::vector<unsigned> exponents;
        Scalar lhs, rhs;
    };
    std::optional<Mismatch> witness; // first mismatch in degree, then lex order
};

// checks the even-degree moment identities for all 2k <= t - 1 (odd degrees
// vanish on antipodal sets); t in {3, 5, 7}
StrengthCertificate strength_certificate(const Design& dsg, int t);

struct MixedMomentEntry {
    std::string label; // "D11", "D13", "D22", "D15", "D24", "D33"
    Scalar lhs, rhs;
    bool ok = false;
};
struct MixedMomentReport {
    int strength = 0; // 5 or 7: strongest certificate that passed
    std::vector<MixedMomentEntry> entries;
    bool all_ok = false;
};

// two-direction moment identities; requires a 5-design (first three entries)
// or 7-design (all six)
MixedMomentReport mixed_moment_report(const Design& dsg,
                                      const std::vector<Scalar>& alpha,
                                      const std::vector<Scalar>& beta);

// minimal size of a spherical t-design meeting the absolute bound, on S^(n-1):
// for odd t = 2m+1 antipodal pairs give 2*C(n-1+m, m)
Int tight_cardinality(long n, int t);

struct InnerProductSpectrum {
    // |(x,y)| over unordered pairs of distinct antipodal classes
    std::map<Scalar, long, ScalarLess> counts;
    bool tight5_compatible = false; // every value equals 1
    bool tight7_compatible = false; // every value lies in {0, 1}
};
InnerProductSpectrum inner_product_spectrum(const Design& dsg);

struct MomentProfile {
    // k -> number of antipodal classes with |(x,alpha)| = k
    std::map<Int, long> counts;
    bool tight7_shape = false; // |X| matches the tight bound for strength 7
    // power-sum residuals at degrees 0,2,4,6 against the closed forms in
    // (d, (alpha,alpha)); present when tight7_shape and d is rational
    std::optional<std::array<Rat, 4>> residuals;
};

// requires every (x, alpha) to be a rational integer
MomentProfile moment_profile(const Design& dsg, const std::vector<Scalar>& alpha);

} // namespace tsd
