#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tsd/design.hpp"
#include "tsd/errors.hpp"

#include <sstream>
#include <vector>

using namespace tsd;

namespace {

std::vector<Scalar> unit(long n, long i, const Scalar& c = Scalar(1)) {
    std::vector<Scalar> v(static_cast<size_t>(n), Scalar(0));
    v[static_cast<size_t>(i)] = c;
    return v;
}

// plain monomial evaluation of the stored polynomial coefficients
Scalar eval_tensor(const SymmetricMomentTensor& t, const std::vector<Scalar>& alpha) {
    Scalar total(0);
    for (const auto& [e, c] : t.coeff) {
        Scalar term = c;
        for (size_t i = 0; i < e.size(); ++i) term *= alpha[i].pow(e[i]);
        total += term;
    }
    return total;
}

} // namespace

TEST_CASE("builtin shapes") {
    CHECK(Design::builtin_names() ==
          std::vector<std::string>{"e8", "e7dual", "icosahedron"});

    Design e8 = Design::builtin("e8");
    CHECK(e8.dim() == 8);
    CHECK(e8.rep_count() == 120);
    CHECK(e8.size() == 240);
    CHECK(e8.norm() == Scalar(2));

    Design e7 = Design::builtin("e7dual");
    CHECK(e7.dim() == 7);
    CHECK(e7.size() == 56);
    CHECK(e7.norm() == Scalar(3));

    Design ico = Design::builtin("icosahedron");
    CHECK(ico.dim() == 3);
    CHECK(ico.size() == 12);
    CHECK(ico.norm() == Scalar(Rat(5, 2), Rat(1, 2), 5));
    CHECK(ico.disc() == 5);

    CHECK_THROWS_AS(Design::builtin("nosuch"), std::invalid_argument);

    for (const auto& name : Design::builtin_names()) {
        Design dsg = Design::builtin(name);
        for (const auto& x : dsg.reps())
            CHECK(inner(x, x) == dsg.norm()); // every point on the same sphere
    }
}

TEST_CASE("moment sums over the full antipodal set") {
    Design e8 = Design::builtin("e8");
    std::vector<Scalar> e1 = unit(8, 0);

    CHECK(moment_sum(e8, e1, 0) == Scalar(240));
    CHECK(moment_sum(e8, e1, 1) == Scalar(0));
    CHECK(moment_sum(e8, e1, 2) == Scalar(60));
    CHECK(moment_sum(e8, e1, 3) == Scalar(0));

    // degree-2 identity: sum (x,a)^2 = (|X| d / n) (a,a)
    CHECK(moment_constant(e8, 2) == Scalar(60));
    std::vector<Scalar> a = {Scalar(1), Scalar(2), Scalar(0), Scalar(Rat(1, 2)),
                             Scalar(0), Scalar(0), Scalar(-1), Scalar(0)};
    CHECK(moment_sum(e8, a, 2) == Scalar(60) * inner(a, a));
}

TEST_CASE("moment tensor matches direct sums") {
    for (const auto& name : {"e7dual", "icosahedron"}) {
        Design dsg = Design::builtin(name);
        long n = dsg.dim();
        for (unsigned degree : {2u, 4u}) {
            SymmetricMomentTensor t = moment_tensor(dsg, degree);
            for (long i = 0; i < n; ++i) {
                std::vector<Scalar> alpha = unit(n, i, Scalar(1));
                alpha[static_cast<size_t>((i + 1) % n)] = Scalar(Rat(1, 3));
                CHECK(eval_tensor(t, alpha) == moment_sum(dsg, alpha, degree));
            }
        }
    }
}

TEST_CASE("laplacian contracts one power pair") {
    // d/dalpha twice: Lap sum (x,a)^k = k(k-1) d * sum (x,a)^(k-2)
    Design e8 = Design::builtin("e8");
    CHECK(laplacian(moment_tensor(e8, 6)) ==
          scaled(moment_tensor(e8, 4), Scalar(60)));
    CHECK(laplacian(moment_tensor(e8, 4)) ==
          scaled(moment_tensor(e8, 2), Scalar(24)));

    Design e7 = Design::builtin("e7dual");
    CHECK(laplacian(moment_tensor(e7, 4)) ==
          scaled(moment_tensor(e7, 2), Scalar(36)));
}

TEST_CASE("strength certificates") {
    Design e8 = Design::builtin("e8");
    CHECK(strength_certificate(e8, 7).pass);
    CHECK(strength_certificate(e8, 5).pass);
    CHECK(strength_certificate(e8, 3).pass);

    Design e7 = Design::builtin("e7dual");
    CHECK(strength_certificate(e7, 5).pass);
    StrengthCertificate c7 = strength_certificate(e7, 7);
    CHECK(!c7.pass);
    REQUIRE(c7.witness.has_value());
    CHECK(c7.witness->degree == 6);
    CHECK(c7.witness->lhs != c7.witness->rhs);

    Design ico = Design::builtin("icosahedron");
    CHECK(strength_certificate(ico, 5).pass);
    CHECK(!strength_certificate(ico, 7).pass);

    CHECK_THROWS_AS(strength_certificate(e8, 4), std::invalid_argument);
}

TEST_CASE("mixed two-direction identities") {
    Design e8 = Design::builtin("e8");
    std::vector<Scalar> a = unit(8, 0);
    std::vector<Scalar> b = unit(8, 1);
    b[2] = Scalar(Rat(1, 2));
    MixedMomentReport rep = mixed_moment_report(e8, a, b);
    CHECK(rep.strength == 7);
    CHECK(rep.all_ok);
    CHECK(rep.entries.size() == 6);
    for (const auto& e : rep.entries) {
        CHECK(e.ok);
        CHECK(e.lhs == e.rhs);
    }

    Design e7 = Design::builtin("e7dual");
    MixedMomentReport rep5 = mixed_moment_report(e7, unit(7, 0), unit(7, 3));
    CHECK(rep5.strength == 5);
    CHECK(rep5.all_ok);
    CHECK(rep5.entries.size() == 3);
}

TEST_CASE("tight cardinalities") {
    CHECK(tight_cardinality(8, 7) == Int(240));
    CHECK(tight_cardinality(7, 5) == Int(56));
    CHECK(tight_cardinality(3, 5) == Int(12));
    CHECK(tight_cardinality(23, 7) == Int(4600));
    CHECK(tight_cardinality(23, 5) == Int(552));
}

TEST_CASE("inner product spectra") {
    InnerProductSpectrum s8 = inner_product_spectrum(Design::builtin("e8"));
    CHECK(s8.tight7_compatible);
    CHECK(!s8.tight5_compatible);
    CHECK(s8.counts.at(Scalar(0)) == 3780);
    CHECK(s8.counts.at(Scalar(1)) == 3360);
    CHECK(s8.counts.size() == 2);

    InnerProductSpectrum s7 = inner_product_spectrum(Design::builtin("e7dual"));
    CHECK(s7.tight5_compatible);
    CHECK(s7.counts.size() == 1);
    CHECK(s7.counts.at(Scalar(1)) == 378);
}

TEST_CASE("moment profile against a norm-4 direction") {
    Design e8 = Design::builtin("e8");
    std::vector<Scalar> alpha = unit(8, 0, Scalar(2));
    MomentProfile p = moment_profile(e8, alpha);
    CHECK(p.tight7_shape);
    CHECK(p.counts == std::map<Int, long>{{Int(0), 42}, {Int(1), 64}, {Int(2), 14}});
    REQUIRE(p.residuals.has_value());
    for (const auto& r : *p.residuals) CHECK(r == 0);

    // non-integral pairings are rejected, not rounded
    CHECK_THROWS_AS(moment_profile(e8, unit(8, 0)), UnsupportedInput);
}

TEST_CASE("design file round trip") {
    for (const auto& name : Design::builtin_names()) {
        Design dsg = Design::builtin(name);
        std::stringstream buf;
        save_design(dsg, buf);
        Design back = load_design(buf);
        CHECK(back.dim() == dsg.dim());
        CHECK(back.norm() == dsg.norm());
        CHECK(back.disc() == dsg.disc());
        CHECK(back.reps() == dsg.reps());
        CHECK(back.label().empty()); // labels are not part of the file format
    }
}

TEST_CASE("design file rejects malformed input") {
    auto load_text = [](const std::string& text) {
        std::stringstream buf(text);
        return load_design(buf);
    };
    CHECK_THROWS_AS(load_text(""), ParseError);
    CHECK_THROWS_AS(load_text("n=2\nd=1\nD=0\ns=1\n1 2 3\n"), ParseError);
    CHECK_THROWS_AS(load_text("n=2\nd=1\nD=0\ns=2\n1 0\n"), ParseError);
    CHECK_THROWS_AS(load_text("d=1\nn=2\nD=0\ns=1\n1 0\n"), ParseError);

    // comments and blank lines are fine
    Design ok = load_text("# two points\nn=2\nd=1\nD=0\ns=1\n\n1 0\n");
    CHECK(ok.dim() == 2);
    CHECK(ok.rep_count() == 1);
}
