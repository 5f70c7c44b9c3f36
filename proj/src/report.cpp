#include "tsd/report.hpp"

#include <sstream>

namespace tsd {

namespace {

std::string int_str(const Int& x) { return x.get_str(); }

Json rat_matrix_json(const RatMat& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(rat_to_string(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json gauss_json(const GaussSumReport& s) {
    Json sylow = Json::array();
    for (const auto& [p, sum] : s.sylow)
        sylow.push_back(Json{{"p", p}, {"sum", sum.to_string()}});
    Json j{{"conductor", s.conductor},
           {"total", s.total.to_string()},
           {"sylow", std::move(sylow)},
           {"sylow_product_ok", s.sylow_product_ok},
           {"magnitude_ok", s.magnitude_ok},
           {"group_order", int_str(s.group_order)}};
    j["eighth_root"] = s.eighth_root ? Json(*s.eighth_root) : Json(nullptr);
    return j;
}

bool gauss_ok(const GaussSumReport& s) {
    return s.sylow_product_ok && s.magnitude_ok && s.eighth_root.has_value();
}

std::string disc_group_name(const std::vector<Int>& invariants) {
    std::string name;
    for (const auto& f : invariants) {
        if (f == 1) continue;
        if (!name.empty()) name += " x ";
        name += "Z/" + int_str(f);
    }
    return name.empty() ? "trivial" : name;
}

}  // namespace

Json verdict_json(const Verdict& v) {
    Json reasons = Json::array();
    for (const auto& r : v.reasons)
        reasons.push_back(Json{{"code", r.code},
                               {"statement", r.statement},
                               {"hypotheses", r.hypotheses}});
    return Json{{"t", v.t},
                {"param", v.param},
                {"n", v.dim},
                {"status", to_string(v.status)},
                {"reasons", std::move(reasons)},
                {"registry_hits", v.registry_hits},
                {"notes", v.notes}};
}

Json sieve_json(const std::vector<Verdict>& table) {
    Json verdicts = Json::array();
    Json excluded = Json::array(), open = Json::array(), known = Json::array();
    for (const auto& v : table) {
        verdicts.push_back(verdict_json(v));
        switch (v.status) {
            case Status::Excluded: excluded.push_back(v.param); break;
            case Status::Open: open.push_back(v.param); break;
            case Status::KnownExists: known.push_back(v.param); break;
        }
    }
    return Json{{"count", table.size()},
                {"verdicts", std::move(verdicts)},
                {"summary", Json{{"excluded", std::move(excluded)},
                                 {"open", std::move(open)},
                                 {"known_exists", std::move(known)}}}};
}

std::string sieve_text(const std::vector<Verdict>& table) {
    std::ostringstream out;
    long excluded = 0, open = 0, known = 0;
    out << "param            n  status       reasons\n";
    for (const auto& v : table) {
        std::string reasons;
        for (const auto& r : v.reasons) {
            if (!reasons.empty()) reasons += ", ";
            reasons += r.code;
        }
        if (reasons.empty()) reasons = "-";
        std::ostringstream line;
        line.width(5);
        line << v.param;
        line << " ";
        line.width(12);
        line << v.dim;
        line << "  ";
        std::string status = to_string(v.status);
        status.resize(13, ' ');
        line << status << reasons;
        out << line.str();
        for (const auto& note : v.notes) out << "  [" << note << "]";
        out << "\n";
        if (v.status == Status::Excluded) ++excluded;
        if (v.status == Status::Open) ++open;
        if (v.status == Status::KnownExists) ++known;
    }
    out << "excluded " << excluded << ", open " << open << ", known "
        << known << " of " << table.size() << "\n";
    return out.str();
}

DesignReport design_report(const Design& dsg, int t) {
    DesignReport rep;
    const StrengthCertificate cert = strength_certificate(dsg, t);
    const Int bound = tight_cardinality(dsg.dim(), t);
    const bool tight_ok = Int(dsg.size()) == bound;
    const InnerProductSpectrum spec = inner_product_spectrum(dsg);

    Json strength{{"t", t}, {"pass", cert.pass}};
    if (cert.witness) {
        strength["witness"] = Json{{"degree", cert.witness->degree},
                                   {"exponents", cert.witness->exponents},
                                   {"lhs", cert.witness->lhs.to_string()},
                                   {"rhs", cert.witness->rhs.to_string()}};
    }

    Json values = Json::array();
    for (const auto& [value, count] : spec.counts)
        values.push_back(Json{{"value", value.to_string()}, {"count", count}});

    // the requested checks are strength and tightness; the spectrum flags
    // describe the integer-valued conventions of the known families and stay
    // informational (the icosahedron is tight with an irrational d)
    rep.pass = cert.pass && tight_ok;
    rep.body = Json{
        {"label", dsg.label()},
        {"n", dsg.dim()},
        {"d", dsg.norm().to_string()},
        {"size", dsg.size()},
        {"strength", std::move(strength)},
        {"tight",
         Json{{"bound", int_str(bound)}, {"size", dsg.size()}, {"ok", tight_ok}}},
        {"spectrum", Json{{"values", std::move(values)},
                          {"tight5_compatible", spec.tight5_compatible},
                          {"tight7_compatible", spec.tight7_compatible}}},
        {"pass", rep.pass},
    };
    return rep;
}

std::string design_text(const DesignReport& rep) {
    const Json& j = rep.body;
    std::ostringstream out;
    std::string label = j["label"].get<std::string>();
    if (!label.empty()) label += " ";
    out << "design: " << label << "(n = " << j["n"]
        << ", d = " << j["d"].get<std::string>()
        << ", |X u -X| = " << j["size"] << ")\n";
    out << "strength " << j["strength"]["t"] << ": "
        << (j["strength"]["pass"].get<bool>() ? "pass" : "fail");
    if (j["strength"].contains("witness")) {
        const Json& w = j["strength"]["witness"];
        out << " (first mismatch at degree " << w["degree"] << ", lhs "
            << w["lhs"].get<std::string>() << ", rhs "
            << w["rhs"].get<std::string>() << ")";
    }
    out << "\n";
    if (j["tight"]["ok"].get<bool>())
        out << "tight: yes (" << j["tight"]["size"] << " = bound)\n";
    else
        out << "tight: no (" << j["tight"]["size"] << " vs bound "
            << j["tight"]["bound"].get<std::string>() << ")\n";
    out << "spectrum |(x,y)|:";
    for (const auto& entry : j["spectrum"]["values"])
        out << " " << entry["value"].get<std::string>() << " x" << entry["count"];
    out << "\n";
    out << "values in {+-1} (tight-5 convention): "
        << (j["spectrum"]["tight5_compatible"].get<bool>() ? "yes" : "no")
        << "; in {0,+-1} (tight-7 convention): "
        << (j["spectrum"]["tight7_compatible"].get<bool>() ? "yes" : "no")
        << "\n";
    out << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

DesignReport lattice_report(const Design& dsg, const Int& disc_bound) {
    DesignReport rep;
    const Lattice L = lattice_from_vectors(rational_vectors(dsg));
    bool pass = true;

    Json j;
    j["label"] = dsg.label();
    j["n"] = L.rank();
    j["gram"] = rat_matrix_json(L.gram());
    j["det"] = rat_to_string(L.det());
    j["integral"] = L.integral();
    j["even"] = L.even();

    if (L.integral()) {
        const std::vector<Int> inv = snf_invariants(L);
        Json factors = Json::array();
        for (const auto& f : inv) factors.push_back(int_str(f));
        j["invariant_factors"] = std::move(factors);
        j["disc_group"] = disc_group_name(inv);

        if (L.even()) {
            const DiscGroup G = discriminant_form(L, disc_bound);
            const GaussSumReport S = gauss_sum(G);
            Json q_table = Json::array();
            for (const auto& el : G.elements) {
                Json idx = Json::array();
                for (const auto& i : el.index) idx.push_back(int_str(i));
                q_table.push_back(Json{{"index", std::move(idx)},
                                       {"q", rat_to_string(el.q)}});
            }
            j["q_table"] = std::move(q_table);
            j["gauss_sum"] = gauss_json(S);
            const int expected = static_cast<int>(L.rank() % 8);
            const bool mil_ok =
                gauss_ok(S) && S.eighth_root && *S.eighth_root == expected;
            j["milgram"] = Json{
                {"expected", expected},
                {"got", S.eighth_root ? Json(*S.eighth_root) : Json(nullptr)},
                {"pass", mil_ok}};
            pass = pass && mil_ok;
        } else {
            const ParityInfo P = parity_and_det(L);
            if (P.det_odd) {
                const CharVector cv = characteristic_vector(L);
                j["characteristic_norm"] = int_str(cv.norm);
                j["characteristic_norm_mod8"] = cv.norm_mod8;
                j["det_square_class_mod8"] =
                    two_adic_square_class(L.det().get_num());
            }
            const InnerProductSpectrum spec = inner_product_spectrum(dsg);
            if (spec.tight5_compatible) {
                const EvenSplit es = even_sublattice(L);
                const std::vector<Int> ginv = snf_invariants(es.gamma);
                Json gfac = Json::array();
                for (const auto& f : ginv) gfac.push_back(int_str(f));
                const DiscGroup G2 =
                    discriminant_form(es.gamma, disc_bound);
                const GaussSumReport S2 = gauss_sum(G2);
                const bool split_ok = es.index_two && es.gamma_integral &&
                                      es.gamma_even && es.plus_in_two_dual &&
                                      gauss_ok(S2);
                j["even_sublattice"] =
                    Json{{"index_two", es.index_two},
                         {"gamma_integral", es.gamma_integral},
                         {"gamma_even", es.gamma_even},
                         {"plus_in_two_dual", es.plus_in_two_dual},
                         {"gamma_det", rat_to_string(es.gamma.det())},
                         {"gamma_invariant_factors", std::move(gfac)},
                         {"gamma_disc_group", disc_group_name(ginv)},
                         {"gamma_gauss_sum", gauss_json(S2)},
                         {"ok", split_ok}};
                pass = pass && split_ok;
            }
        }
    }

    j["pass"] = pass;
    rep.body = std::move(j);
    rep.pass = pass;
    return rep;
}

std::string lattice_text(const DesignReport& rep) {
    const Json& j = rep.body;
    std::ostringstream out;
    std::string label = j["label"].get<std::string>();
    out << "lattice" << (label.empty() ? "" : " of " + label)
        << ": n = " << j["n"] << ", det = " << j["det"].get<std::string>()
        << "\n";
    const bool even = j["even"].get<bool>();
    const bool unimodular = j["det"].get<std::string>() == "1";
    out << "parity: "
        << (j["integral"].get<bool>() ? (even ? "even" : "odd") : "non-integral");
    if (unimodular) out << " unimodular";
    out << "\n";
    if (j.contains("disc_group"))
        out << "discriminant group: " << j["disc_group"].get<std::string>()
            << "\n";
    if (j.contains("milgram")) {
        out << "milgram: "
            << (j["milgram"]["pass"].get<bool>() ? "pass" : "fail")
            << " (rank mod 8 = " << j["milgram"]["expected"]
            << ", gauss sum eighth root = " << j["milgram"]["got"] << ")\n";
    }
    if (j.contains("characteristic_norm_mod8"))
        out << "characteristic norm mod 8: " << j["characteristic_norm_mod8"]
            << "\n";
    if (j.contains("even_sublattice")) {
        const Json& es = j["even_sublattice"];
        out << "even sublattice: index "
            << (es["index_two"].get<bool>() ? "2" : "not 2")
            << ", halved gram det = " << es["gamma_det"].get<std::string>()
            << ", disc group " << es["gamma_disc_group"].get<std::string>()
            << "\n";
        out << "halved gram gauss sum: eighth root = "
            << es["gamma_gauss_sum"]["eighth_root"] << " (total "
            << es["gamma_gauss_sum"]["total"].get<std::string>() << ")\n";
    }
    out << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

Json table_json(const TableReport& rep) {
    auto v2_json = [](long v) {
        return v >= kValuationInfinity ? Json("inf") : Json(v);
    };
    Json cells = Json::array();
    for (const auto& c : rep.cells) {
        Json diag = Json::array();
        for (const auto& s : c.diagnostics)
            diag.push_back(Json{{"source", std::string(1, s.source)},
                                {"a_power", s.a_power},
                                {"v2_const", v2_json(s.v2_const)},
                                {"v2_linear", v2_json(s.v2_linear)},
                                {"v2_rest", v2_json(s.v2_rest)}});
        cells.push_back(Json{{"r", c.r},
                             {"delta", c.delta},
                             {"expected", c.expected},
                             {"label", c.label},
                             {"ok", c.ok},
                             {"detail", c.detail},
                             {"coefficients", std::move(diag)}});
    }
    return Json{{"pass", rep.pass},
                {"cells", std::move(cells)},
                {"conclusions", rep.conclusions}};
}

std::string table_text(const TableReport& rep) {
    std::ostringstream out;
    out << "    r:    3    5    7   -7   -5   -3\n";
    for (int row = 0; row < 4; ++row) {
        out << "delta=" << 2 * row << ":";
        for (int col = 0; col < 6; ++col) {
            const CellReport& c = rep.cells[static_cast<std::size_t>(row * 6 + col)];
            std::string shown = c.label.empty() ? "??" : c.label;
            if (!c.ok) shown += "!";
            out << "  " << (shown.size() < 3 ? " " : "") << shown;
        }
        out << "\n";
    }
    for (const auto& c : rep.cells)
        if (!c.ok)
            out << "cell r=" << c.r << " delta=" << c.delta << ": " << c.detail
                << "\n";
    for (const auto& line : rep.conclusions) out << line << "\n";
    out << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace tsd
