#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tsd/congruence.hpp"
#include "tsd/design.hpp"
#include "tsd/lattice.hpp"
#include "tsd/sieve.hpp"

namespace tsd {

using Json = nlohmann::json;

// All numeric payloads are exact: rationals and algebraic values are
// rendered as strings, never floating point.

Json verdict_json(const Verdict& v);
Json sieve_json(const std::vector<Verdict>& table);
std::string sieve_text(const std::vector<Verdict>& table);

struct DesignReport {
    Json body;
    bool pass = false;
};

// Strength certificate at the requested t, tightness against the absolute
// bound, and the inner-product spectrum.
DesignReport design_report(const Design& dsg, int t);
std::string design_text(const DesignReport& rep);

// Lattice spanned by the design: parity, determinant, invariant factors,
// discriminant form data where defined, and the even-sublattice analysis
// for spectra compatible with a tight 5-design.
DesignReport lattice_report(const Design& dsg, const Int& disc_bound);
std::string lattice_text(const DesignReport& rep);

Json table_json(const TableReport& rep);
std::string table_text(const TableReport& rep);

}  // namespace tsd
