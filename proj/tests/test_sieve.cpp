#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tsd/errors.hpp"
#include "tsd/sieve.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

using namespace tsd;

namespace {

bool has_code(const Verdict& v, const std::string& code) {
    for (const auto& r : v.reasons)
        if (r.code == code) return true;
    return false;
}

bool has_note(const Verdict& v, const std::string& needle) {
    for (const auto& n : v.notes)
        if (n.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("five-design dual conditions") {
    // values of the e7dual fixture: n=7, d=3, 28 antipodal pairs
    CheckPair ok = check_D4mD2(7, Rat(3), Rat(28), Rat(3), Rat(1));
    CHECK(ok.first);
    CHECK(ok.second);

    CheckPair bad = check_D4mD2(7, Rat(3), Rat(28), Rat(1, 3), Rat(1));
    CHECK(!bad.first);
    CHECK(!bad.second);

    CheckPair zero = check_D4mD2(7, Rat(3), Rat(28), Rat(0), Rat(5));
    CHECK(zero.first);
    CHECK(zero.second);

    CheckPair e8 = check_D4mD2(8, Rat(2), Rat(120), Rat(2), Rat(1));
    CHECK(e8.first);
    CHECK(e8.second);
}

TEST_CASE("seven-design dual conditions") {
    CheckPair e8 = check_D15(8, Rat(2), Rat(120), Rat(2), Rat(2), Rat(1));
    CHECK(e8.first);
    CHECK(e8.second);

    CheckPair zero_ip = check_D15(8, Rat(2), Rat(120), Rat(2), Rat(2), Rat(0));
    CHECK(zero_ip.first);
    CHECK(zero_ip.second);
}

TEST_CASE("tight seven-design specialization") {
    CheckPair ok = check_div(Rat(2), Rat(2), Rat(2));
    CHECK(ok.first);
    CHECK(ok.second);

    CheckPair bad = check_div(Rat(4), Rat(1, 2), Rat(1, 2));
    CHECK((!bad.first || !bad.second));

    CheckPair zero = check_div(Rat(5), Rat(7), Rat(0));
    CHECK(zero.first);
    CHECK(zero.second);
}

TEST_CASE("specialization agrees with the generic displays") {
    // substituting n = 3d^2-4 and s = n(n+1)(n+2)/6 into the generic
    // conditions must reproduce the d-only form on every input
    const std::vector<Rat> values = {Rat(1), Rat(2), Rat(1, 2), Rat(5, 3)};
    for (long d = 2; d <= 6; ++d) {
        long n = 3 * d * d - 4;
        Rat s = Rat(n) * Rat(n + 1) * Rat(n + 2) / 6;
        for (const Rat& aa : values) {
            for (const Rat& bb : values) {
                for (const Rat& ab : values) {
                    CheckPair generic = check_D15(n, Rat(d), s, aa, bb, ab);
                    CHECK(check_div_pair(Rat(d), aa, bb, ab) == generic.second);
                    if (bb == aa) {
                        CheckPair special = check_div(Rat(d), aa, ab);
                        CHECK(special.first == generic.first);
                        CHECK(special.second == generic.second);
                    }
                }
            }
        }
    }
}

TEST_CASE("tight five-design norm condition") {
    CHECK(check_div3(1, Rat(3)));
    CHECK(check_div3(2, Rat(5, 3))); // lands exactly on a root
    CHECK(check_div3(4, Rat(0)));
    CHECK(!check_div3(1, Rat(1, 3)));
}

TEST_CASE("cubic valuations") {
    CubicValuations v13 = cubic_valuations(13);
    CHECK(v13.valuations ==
          std::map<long, long>{{2, 3}, {3, 1}, {7, 1}, {13, 1}});
    CHECK(v13.v2_of_d == 0);
    CHECK(v13.v2() == 3);
    CHECK(v13.v3() == 1);
    CHECK(v13.max_vp_ge5() == 1);
    CHECK(v13.odd_part_small());

    CubicValuations v16 = cubic_valuations(16);
    CHECK(v16.v2_of_d == 4);
    CHECK(v16.valuations ==
          std::map<long, long>{{2, 4}, {3, 1}, {5, 1}, {17, 1}});

    CubicValuations v2d = cubic_valuations(2);
    CHECK(v2d.valuations == std::map<long, long>{{2, 1}, {3, 1}});
    CHECK(v2d.max_vp_ge5() == 0);

    // d=125: the factor d alone contributes v5 = 3
    CHECK(cubic_valuations(125).max_vp_ge5() == 3);
    CHECK(!cubic_valuations(125).odd_part_small());
}

TEST_CASE("weakening the factor bound never changes an answer") {
    for (long d = 2; d <= 300; ++d) {
        CubicValuations full = cubic_valuations(d, 1000);
        try {
            CubicValuations weak = cubic_valuations(d, 13);
            CHECK(weak.valuations == full.valuations);
            CHECK(weak.v2_of_d == full.v2_of_d);
        } catch (const BoundExceeded&) {
            // acceptable: an error, never a different verdict
        }
    }
}

TEST_CASE("dual integrality guarantees") {
    DualIntegrality d4 = kdiv_guarantees(4);
    CHECK(d4.norm_p_integral == std::vector<std::pair<long, bool>>{{5, true}});
    CHECK(d4.norm_3_integral);
    CHECK(d4.norm_2_integral);
    CHECK(d4.norm_2_positive);
    CHECK(d4.ip_2_integral_even);
    CHECK(!d4.ip_2_integral_odd);
    CHECK(d4.all_norm_p_integral());

    DualIntegrality d2 = kdiv_guarantees(2);
    CHECK(d2.norm_p_integral.empty());
    CHECK(d2.all_norm_p_integral());
    CHECK(d2.norm_3_integral);
    CHECK(d2.norm_2_integral);
    CHECK(d2.norm_2_positive);
    CHECK(d2.ip_2_integral_even);

    DualIntegrality d5 = kdiv_guarantees(5);
    CHECK(d5.ip_2_integral_odd); // v2(24) = 3 <= 4
    CHECK(!d5.norm_2_positive);  // d odd

    DualIntegrality d125 = kdiv_guarantees(125);
    CHECK(!d125.all_norm_p_integral());
}

TEST_CASE("registry") {
    Registry reg = Registry::prior_work();
    CHECK(reg.size() == 4);
    CHECK(reg.tags(5, 3) == std::vector<std::string>{"BMV"});
    CHECK(reg.tags(5, 4) == std::vector<std::string>{"BMV"});
    CHECK(reg.tags(7, 4) == std::vector<std::string>{"BMV"});
    CHECK(reg.tags(7, 5) == std::vector<std::string>{"BMV"});
    CHECK(reg.tags(7, 6).empty());

    // entries contradicting a known design are rejected
    CHECK_THROWS_AS(reg.add(7, 2, "X"), std::invalid_argument);
    CHECK_THROWS_AS(reg.add(7, 3, "X"), std::invalid_argument);
    CHECK_THROWS_AS(reg.add(5, 1, "X"), std::invalid_argument);
    CHECK_THROWS_AS(reg.add(5, 2, "X"), std::invalid_argument);
    CHECK_THROWS_AS(reg.add(4, 9, "X"), std::invalid_argument);
    CHECK_THROWS_AS(reg.add(7, 9, ""), std::invalid_argument);

    reg.add(7, 30, "QUX");
    CHECK(reg.tags(7, 30) == std::vector<std::string>{"QUX"});
    CHECK(reg.size() == 5);
}

TEST_CASE("registry file parsing") {
    const std::string path = "registry_test_tmp.txt";
    {
        std::ofstream out(path);
        out << "# comment\n\n";
        out << "t=5 param=3 source=BMV\n";
        out << "t=7 param=10 source=survey\n";
    }
    Registry reg = Registry::from_file(path);
    CHECK(reg.size() == 2);
    CHECK(reg.tags(7, 10) == std::vector<std::string>{"survey"});
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "t=6 param=3 source=BMV\n";
    }
    CHECK_THROWS_AS(Registry::from_file(path), ParseError);
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "t=7 param=2 source=BMV\n"; // contradicts a known design
    }
    CHECK_THROWS(Registry::from_file(path));
    std::remove(path.c_str());

    CHECK_THROWS_AS(Registry::from_file("no_such_registry_file.txt"), ParseError);
}

TEST_CASE("seven-design verdicts") {
    Registry reg = Registry::prior_work();

    CHECK(verdict7(2, reg).status == Status::KnownExists);
    CHECK(verdict7(3, reg).status == Status::KnownExists);
    CHECK_THROWS_AS(verdict7(1, reg), std::invalid_argument);

    Verdict v4 = verdict7(4, reg);
    CHECK(v4.status == Status::Excluded);
    CHECK(has_code(v4, "T-v2deq3"));
    CHECK(has_code(v4, "REGISTRY:BMV"));
    CHECK(v4.dim == 44);

    Verdict v13 = verdict7(13, reg);
    CHECK(v13.status == Status::Excluded);
    CHECK(has_code(v13, "T-oddd-a"));
    CHECK(has_code(v13, "T-oddd-b")); // 13 = -3 mod 16, both arguments apply

    Verdict v29 = verdict7(29, reg);
    CHECK(v29.status == Status::Excluded);
    CHECK(!has_code(v29, "T-oddd-a")); // 29 = -3 mod 32 escapes the first
    CHECK(has_code(v29, "T-oddd-b"));

    CHECK(verdict7(6, reg).status == Status::Open);
    CHECK(verdict7(15, reg).status == Status::Open);
    CHECK(verdict7(17, reg).status == Status::Open);

    Verdict v35 = verdict7(35, reg);
    CHECK(v35.status == Status::Open);
    CHECK(has_note(v35, "(Z_2^*)^2"));

    Verdict v125 = verdict7(125, reg);
    CHECK(v125.status == Status::Open); // 125 = 29 mod 32 but v5 = 3
    CHECK(has_note(v125, "3*(Z_2^*)^2"));
    CHECK(has_note(v125, "escapes exclusion"));
}

TEST_CASE("odd parameters fall into exactly one bucket") {
    Registry empty;
    for (long d = 5; d <= 499; d += 2) {
        Verdict v = verdict7(d, empty);
        const long r16 = d % 16;
        const long r32 = d % 32;
        int buckets = 0;
        if (v.status == Status::Excluded && has_code(v, "T-oddd-a")) ++buckets;
        if (v.status == Status::Excluded && !has_code(v, "T-oddd-a") &&
            has_code(v, "T-oddd-b"))
            ++buckets;
        if (v.status == Status::Open && r32 == 3) ++buckets;
        if (v.status == Status::Open && (r16 == 1 || r16 == 15)) ++buckets;
        if (v.status == Status::Open && r32 == 29) ++buckets;
        CHECK(buckets == 1);
        if (v.status == Status::Open && r32 == 3) CHECK(has_note(v, "(Z_2^*)^2"));
        if (v.status == Status::Open && r32 == 29)
            CHECK(!cubic_valuations(d).odd_part_small());
    }
}

TEST_CASE("five-design verdicts") {
    Registry reg = Registry::prior_work();

    CHECK(verdict5(1, reg).status == Status::KnownExists);
    CHECK(verdict5(2, reg).status == Status::KnownExists);
    CHECK_THROWS_AS(verdict5(0, reg), std::invalid_argument);

    Verdict v6 = verdict5(6, reg);
    CHECK(v6.status == Status::Excluded);
    CHECK(has_code(v6, "T-5even"));
    CHECK(v6.dim == 167);

    Verdict v3 = verdict5(3, reg);
    CHECK(v3.status == Status::Excluded);
    CHECK(v3.reasons.size() == 1);
    CHECK(has_code(v3, "REGISTRY:BMV"));

    Verdict v20 = verdict5(20, reg);
    CHECK(v20.status == Status::Open);
    CHECK(has_note(v20, "-1 mod 3"));

    Verdict v8 = verdict5(8, reg);
    CHECK(v8.status == Status::Open);
    CHECK(has_note(v8, "8 divides m"));

    Verdict v18 = verdict5(18, reg);
    CHECK(v18.status == Status::Open);
    CHECK(has_note(v18, "3^2"));

    CHECK(verdict5(11, reg).status == Status::Open);
    CHECK(verdict5(11, reg).reasons.empty());
}

TEST_CASE("sieve ranges") {
    Registry reg = Registry::prior_work();

    std::vector<Verdict> t7 = run_sieve(7, 2, 21, reg);
    REQUIRE(t7.size() == 20);
    std::set<long> excluded, open, known;
    for (const auto& v : t7) {
        CHECK(v.dim == 3LL * v.param * v.param - 4);
        if (v.status == Status::Excluded) excluded.insert(v.param);
        if (v.status == Status::Open) open.insert(v.param);
        if (v.status == Status::KnownExists) known.insert(v.param);
    }
    CHECK(excluded ==
          std::set<long>{4, 5, 7, 8, 9, 11, 12, 13, 16, 19, 20, 21});
    CHECK(known == std::set<long>{2, 3});
    CHECK(open == std::set<long>{6, 10, 14, 15, 17, 18});

    std::vector<Verdict> t5 = run_sieve(5, 2, 50, reg);
    std::set<long> ex5;
    for (const auto& v : t5)
        if (v.status == Status::Excluded) ex5.insert(v.param);
    for (long m : {3, 4, 6, 10, 12, 22, 28, 30, 34, 42, 46}) CHECK(ex5.count(m) == 1);
    CHECK(ex5.count(1) == 0);
    CHECK(ex5.count(2) == 0);

    CHECK_THROWS_AS(run_sieve(7, 5, 2, reg), std::invalid_argument);
    CHECK_THROWS_AS(run_sieve(7, 1, 5, reg), std::invalid_argument);
    CHECK_THROWS_AS(run_sieve(4, 2, 5, reg), std::invalid_argument);
    CHECK_THROWS_AS(run_sieve(7, 2, 2000000, reg), std::invalid_argument);
}

TEST_CASE("job count does not affect results") {
    Registry reg = Registry::prior_work();
    std::vector<Verdict> seq = run_sieve(7, 2, 200, reg, 1000, 1);
    std::vector<Verdict> par = run_sieve(7, 2, 200, reg, 1000, 8);
    REQUIRE(seq.size() == par.size());
    for (size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].param == par[i].param);
        CHECK(to_string(seq[i].status) == to_string(par[i].status));
        REQUIRE(seq[i].reasons.size() == par[i].reasons.size());
        for (size_t j = 0; j < seq[i].reasons.size(); ++j)
            CHECK(seq[i].reasons[j].code == par[i].reasons[j].code);
        CHECK(seq[i].notes == par[i].notes);
    }
}
