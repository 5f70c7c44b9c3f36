#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tsd/numeric.hpp"

namespace tsd {

// Integrality checks behind the exclusion arguments. Each function evaluates
// the displayed quantity exactly and reports whether it is an integer.

struct CheckPair {
    bool first = false;
    bool second = false;
};

// 5-design conditions on dual vectors: s counts antipodal pairs, so the full
// design has 2s points on the sphere of radius sqrt(d).
CheckPair check_D4mD2(long n, const Rat& d, const Rat& s, const Rat& norm_aa,
                      const Rat& ip_ab);

// 7-design conditions, two displays (multiples of 120 and of 36).
CheckPair check_D15(long n, const Rat& d, const Rat& s, const Rat& norm_aa,
                    const Rat& norm_bb, const Rat& ip_ab);

// Specialization of check_D15 to a tight 7-design, n = 3d^2-4 eliminated.
// The second display is evaluated with both norms equal to norm_aa.
CheckPair check_div(const Rat& d, const Rat& norm_aa, const Rat& ip_ab);

// General second display of check_div, for distinct alpha, beta.
bool check_div_pair(const Rat& d, const Rat& norm_aa, const Rat& norm_bb,
                    const Rat& ip_ab);

// Tight 5-design norm condition, parameter m with d = 2m+1.
bool check_div3(long m, const Rat& norm_aa);

// Valuation data for d^3 - d, factored as (d-1) d (d+1).
struct CubicValuations {
    long d = 0;
    std::map<long, long> valuations;  // prime -> v_p(d^3 - d)
    long v2_of_d = 0;

    long v2() const;
    long v3() const;
    long max_vp_ge5() const;
    // v_p(d^3-d) <= 2 for all p >= 5 and v_3(d^3-d) <= 4.
    bool odd_part_small() const { return max_vp_ge5() <= 2 && v3() <= 4; }
};

CubicValuations cubic_valuations(long d, long factor_bound = 1000);

// Which dual-lattice integrality guarantees hold for a given d: bounds on
// norms (alpha,alpha) and inner products (alpha,beta) over the dual of the
// lattice spanned by a hypothetical tight 7-design.
struct DualIntegrality {
    CubicValuations cubic;
    std::vector<std::pair<long, bool>> norm_p_integral;  // per prime p >= 5
    bool norm_3_integral = false;   // v3(d^3-d) <= 4
    bool norm_2_integral = false;   // v2(d^3-d) <= 6
    bool norm_2_positive = false;   // d even, 8 does not divide d
    bool ip_2_integral_even = false;  // d even, 32 does not divide d
    bool ip_2_integral_odd = false;   // d odd, v2(d^2-1) <= 4

    bool all_norm_p_integral() const;
};

DualIntegrality kdiv_guarantees(long d, long factor_bound = 1000);

// Exclusion verdicts.

enum class Status { Excluded, Open, KnownExists };

std::string to_string(Status s);

struct Reason {
    std::string code;        // stable identifier, e.g. "T-v2deq3"
    std::string statement;   // what the criterion asserts
    std::string hypotheses;  // verified numeric hypothesis values
};

struct Verdict {
    int t = 0;
    long param = 0;        // d for t=7, m for t=5
    long long dim = 0;     // n = 3d^2-4 or (2m+1)^2-2
    Status status = Status::Open;
    std::vector<Reason> reasons;
    std::vector<std::string> registry_hits;
    std::vector<std::string> notes;
};

// Prior-work exclusions loaded from a data file. These are external facts;
// a verdict that uses one cites its source tag. Entries that contradict a
// known design are rejected at load time.
class Registry {
  public:
    Registry() = default;

    // The two even-d and the two small-m cases settled before this toolkit.
    static Registry prior_work();
    static Registry from_file(const std::string& path);

    void add(int t, long param, const std::string& tag);
    std::vector<std::string> tags(int t, long param) const;
    std::size_t size() const { return count_; }

  private:
    std::map<std::pair<int, long>, std::vector<std::string>> entries_;
    std::size_t count_ = 0;
};

Verdict verdict7(long d, const Registry& registry, long factor_bound = 1000);
Verdict verdict5(long m, const Registry& registry, long factor_bound = 1000);

std::vector<Verdict> run_sieve(int t, long lo, long hi,
                               const Registry& registry,
                               long factor_bound = 1000, int jobs = 1);

}  // namespace tsd
