#include "tsd/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tsd {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

MPoly::MPoly(std::vector<std::string> vars) : vars_(sorted_unique(std::move(vars))) {}

MPoly MPoly::constant(const Rat& c) {
    MPoly p;
    if (c != 0) p.terms_[{}] = c;
    return p;
}

MPoly MPoly::var(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    MPoly p;
    p.vars_ = {name};
    p.terms_[{1u}] = 1;
    return p;
}

bool MPoly::is_constant() const {
    for (const auto& [e, c] : terms_)
        for (unsigned x : e)
            if (x) return false;
    return true;
}

Rat MPoly::constant_value() const {
    if (!is_constant()) throw std::invalid_argument("polynomial is not constant");
    if (terms_.empty()) return Rat(0);
    return terms_.begin()->second;
}

unsigned MPoly::degree_in(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t idx = static_cast<size_t>(it - vars_.begin());
    unsigned deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e[idx]);
    return deg;
}

MPoly MPoly::with_vars(std::vector<std::string> vars) const {
    std::vector<std::string> nv = sorted_unique(std::move(vars));
    // map old index -> new index
    std::vector<size_t> pos(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::lower_bound(nv.begin(), nv.end(), vars_[i]);
        if (it == nv.end() || *it != vars_[i])
            throw std::invalid_argument("with_vars dropped variable '" + vars_[i] + "'");
        pos[i] = static_cast<size_t>(it - nv.begin());
    }
    MPoly out;
    out.vars_ = std::move(nv);
    for (const auto& [e, c] : terms_) {
        Exponents ne(out.vars_.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        out.terms_[ne] = c;
    }
    return out;
}

MPoly MPoly::coeff_in(const std::string& var, unsigned k) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) {
        if (k == 0) return *this;
        MPoly zero;
        zero.vars_ = vars_;
        return zero;
    }
    size_t idx = static_cast<size_t>(it - vars_.begin());
    MPoly out;
    out.vars_ = vars_;
    out.vars_.erase(out.vars_.begin() + static_cast<long>(idx));
    for (const auto& [e, c] : terms_) {
        if (e[idx] != k) continue;
        Exponents ne = e;
        ne.erase(ne.begin() + static_cast<long>(idx));
        out.terms_[ne] = c;
    }
    return out;
}

Rat MPoly::eval(const std::map<std::string, Rat>& point) const {
    std::vector<Rat> vals(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = point.find(vars_[i]);
        if (it == point.end())
            throw std::invalid_argument("unassigned variable '" + vars_[i] + "' in eval");
        vals[i] = it->second;
    }
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat term = c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            Int np, dp;
            Int num = vals[i].get_num(), den = vals[i].get_den();
            mpz_pow_ui(np.get_mpz_t(), num.get_mpz_t(), e[i]);
            mpz_pow_ui(dp.get_mpz_t(), den.get_mpz_t(), e[i]);
            term *= make_rat(np, dp);
        }
        total += term;
    }
    return total;
}

MPoly MPoly::substitute(const std::string& var, const MPoly& replacement) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end())
        throw std::invalid_argument("substitute: unknown variable '" + var + "'");
    size_t idx = static_cast<size_t>(it - vars_.begin());

    std::vector<std::string> nv = vars_;
    nv.erase(nv.begin() + static_cast<long>(idx));
    for (const auto& v : replacement.vars_) nv.push_back(v);
    nv = sorted_unique(std::move(nv));

    MPoly out;
    out.vars_ = nv;
    MPoly repl = replacement.with_vars(nv);
    for (const auto& [e, c] : terms_) {
        MPoly term;
        term.vars_ = nv;
        Exponents ne(nv.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (i == idx) continue;
            auto jt = std::lower_bound(nv.begin(), nv.end(), vars_[i]);
            ne[static_cast<size_t>(jt - nv.begin())] = e[i];
        }
        term.terms_[ne] = c;
        out += term * repl.pow(e[idx]);
    }
    return out;
}

MPoly MPoly::operator-() const {
    MPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

void MPoly::check_same_vars(const MPoly& o) const {
    if (vars_ != o.vars_)
        throw std::invalid_argument("operands carry different variable lists");
}

void MPoly::insert_term(const Exponents& e, const Rat& c) {
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else if (it->second == 0) {
        terms_.erase(it);
    }
}

MPoly& MPoly::operator+=(const MPoly& o) {
    check_same_vars(o);
    for (const auto& [e, c] : o.terms_) insert_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    check_same_vars(o);
    for (const auto& [e, c] : o.terms_) insert_term(e, Rat(-c));
    return *this;
}

MPoly MPoly::operator*(const MPoly& o) const {
    check_same_vars(o);
    MPoly out;
    out.vars_ = vars_;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(e1.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            out.insert_term(e, Rat(c1 * c2));
        }
    }
    return out;
}

MPoly& MPoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MPoly MPoly::pow(unsigned k) const {
    MPoly acc = MPoly::constant(1).with_vars(vars_);
    MPoly base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool operator==(const MPoly& x, const MPoly& y) {
    if (x.vars_ == y.vars_) return x.terms_ == y.terms_;
    // embed into the union for a value comparison
    std::vector<std::string> u = x.vars_;
    u.insert(u.end(), y.vars_.begin(), y.vars_.end());
    u = sorted_unique(std::move(u));
    return x.with_vars(u).terms_ == y.with_vars(u).terms_;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest-degree terms last in map order; print in map order for stability
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool all_zero = true;
        for (unsigned x : e)
            if (x) all_zero = false;
        if (all_zero) {
            os << rat_to_string(a);
            continue;
        }
        bool lead = true;
        if (a != 1) {
            os << rat_to_string(a);
            lead = false;
        }
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!lead) os << "*";
            lead = false;
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

} // namespace tsd
