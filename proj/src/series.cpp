#include "series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace epsq {

long saturating_add(long a, long b) {
    if (a >= kExactTrunc || b >= kExactTrunc) return kExactTrunc;
    long s = a + b;
    return s >= kExactTrunc ? kExactTrunc : s;
}

// ---------------------------------------------------------------------------
// CoeffRing

CoeffRing::CoeffRing(std::vector<Generator> gens, int truncation)
    : gens_(std::move(gens)), trunc_(truncation) {
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (!index_.emplace(gens_[i].name, i).second)
            fail(ErrCode::InvalidArgument, "duplicate generator name: " + gens_[i].name);
        if (gens_[i].name.empty())
            fail(ErrCode::InvalidArgument, "empty generator name");
    }
    if (trunc_ < 0) fail(ErrCode::InvalidArgument, "ring truncation must be non-negative");
}

RingPtr CoeffRing::make(std::vector<Generator> gens, int truncation) {
    return RingPtr(new CoeffRing(std::move(gens), truncation));
}

RingPtr CoeffRing::f2(int truncation) { return make({}, truncation); }

RingPtr CoeffRing::extend(const std::vector<Generator>& extra, std::optional<int> truncation) const {
    std::vector<Generator> gens = gens_;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return make(std::move(gens), truncation.value_or(trunc_));
}

std::optional<size_t> CoeffRing::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

long CoeffRing::degree_of(const GenExp& e) const {
    long d = 0;
    for (size_t i = 0; i < e.size() && i < gens_.size(); ++i)
        d += static_cast<long>(e[i]) * gens_[i].degree;
    return d;
}

bool CoeffRing::within_truncation(const GenExp& e) const {
    long d = degree_of(e);
    return (d < 0 ? -d : d) <= trunc_;
}

bool CoeffRing::same(const CoeffRing& other) const {
    if (trunc_ != other.trunc_ || gens_.size() != other.gens_.size()) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != other.gens_[i].name || gens_[i].degree != other.gens_[i].degree)
            return false;
    return true;
}

static void require_same_ring(const RingPtr& a, const RingPtr& b) {
    if (!a || !b) fail(ErrCode::InvalidArgument, "element without a ring");
    if (a == b) return;
    if (!a->same(*b)) fail(ErrCode::RingMismatch, "elements belong to different rings");
}

// ---------------------------------------------------------------------------
// RingElem

RingElem RingElem::one(RingPtr ring) {
    RingElem r(std::move(ring));
    r.terms_.push_back(GenExp(r.ring_->gen_count(), 0));
    return r;
}

RingElem RingElem::generator(const RingPtr& ring, const std::string& name) {
    auto idx = ring->find(name);
    if (!idx) fail(ErrCode::InvalidArgument, "unknown generator: " + name);
    GenExp e(ring->gen_count(), 0);
    e[*idx] = 1;
    return monomial(ring, std::move(e));
}

RingElem RingElem::monomial(RingPtr ring, GenExp e) {
    if (e.size() != ring->gen_count())
        fail(ErrCode::InvalidArgument, "generator exponent vector has wrong length");
    RingElem r(std::move(ring));
    if (r.ring_->within_truncation(e)) r.terms_.push_back(std::move(e));
    return r;
}

bool RingElem::is_one() const {
    return terms_.size() == 1 &&
           std::all_of(terms_[0].begin(), terms_[0].end(), [](uint32_t v) { return v == 0; });
}

void RingElem::insert_mod2(GenExp e) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e);
    if (it != terms_.end() && *it == e)
        terms_.erase(it);
    else
        terms_.insert(it, std::move(e));
}

void RingElem::normalize() { std::sort(terms_.begin(), terms_.end()); }

RingElem RingElem::operator+(const RingElem& o) const {
    require_same_ring(ring_, o.ring_);
    RingElem r(ring_);
    // symmetric difference of sorted term lists
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i] < o.terms_[j])
            r.terms_.push_back(terms_[i++]);
        else if (o.terms_[j] < terms_[i])
            r.terms_.push_back(o.terms_[j++]);
        else {
            ++i;
            ++j;
        }
    }
    r.terms_.insert(r.terms_.end(), terms_.begin() + i, terms_.end());
    r.terms_.insert(r.terms_.end(), o.terms_.begin() + j, o.terms_.end());
    return r;
}

RingElem RingElem::operator*(const RingElem& o) const {
    require_same_ring(ring_, o.ring_);
    RingElem r(ring_);
    std::vector<GenExp> prods;
    prods.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            GenExp e(a);
            for (size_t k = 0; k < e.size(); ++k) e[k] += b[k];
            if (ring_->within_truncation(e)) prods.push_back(std::move(e));
        }
    }
    std::sort(prods.begin(), prods.end());
    for (size_t i = 0; i < prods.size();) {
        size_t j = i;
        while (j < prods.size() && prods[j] == prods[i]) ++j;
        if ((j - i) % 2 == 1) r.terms_.push_back(prods[i]);
        i = j;
    }
    return r;
}

RingElem RingElem::square() const {
    RingElem r(ring_);
    for (const auto& a : terms_) {
        GenExp e(a);
        for (auto& v : e) v *= 2;
        if (ring_->within_truncation(e)) r.terms_.push_back(std::move(e));
    }
    r.normalize();
    return r;
}

RingElem RingElem::pow(uint32_t k) const {
    RingElem acc = one(ring_);
    RingElem base = *this;
    while (k > 0) {
        if (k & 1u) acc = acc * base;
        k >>= 1;
        if (k) base = base.square();
    }
    return acc;
}

RingElem RingElem::frobenius_sqrt() const {
    RingElem r(ring_);
    for (const auto& a : terms_) {
        GenExp e(a);
        for (auto& v : e) {
            if (v % 2 != 0)
                fail(ErrCode::NotASquare, "not a square: generator exponent " + std::to_string(v));
            v /= 2;
        }
        r.terms_.push_back(std::move(e));
    }
    r.normalize();
    return r;
}

std::optional<long> RingElem::degree() const {
    if (terms_.empty()) return std::nullopt;
    long d = ring_->degree_of(terms_[0]);
    for (size_t i = 1; i < terms_.size(); ++i)
        if (ring_->degree_of(terms_[i]) != d) return std::nullopt;
    return d;
}

bool RingElem::is_homogeneous() const { return terms_.empty() || degree().has_value(); }

RingElem RingElem::substitute_gens(const RingPtr& target,
                                   const std::map<std::string, RingElem>& images) const {
    RingElem out = zero(target);
    for (const auto& term : terms_) {
        RingElem prod = one(target);
        for (size_t i = 0; i < term.size(); ++i) {
            if (term[i] == 0) continue;
            const std::string& name = ring_->gen(i).name;
            auto it = images.find(name);
            RingElem img =
                it != images.end() ? it->second : RingElem::generator(target, name);
            require_same_ring(img.ring(), target);
            prod = prod * img.pow(term[i]);
            if (prod.is_zero()) break;
        }
        out = out + prod;
    }
    return out;
}

RingElem RingElem::migrate(const RingPtr& target) const { return substitute_gens(target, {}); }

std::string RingElem::to_text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& term : terms_) {
        if (!first_term) os << " + ";
        first_term = false;
        bool any = false;
        for (size_t i = 0; i < term.size(); ++i) {
            if (term[i] == 0) continue;
            if (any) os << "*";
            any = true;
            os << ring_->gen(i).name;
            if (term[i] > 1) os << "^" << term[i];
        }
        if (!any) os << "1";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// MultiSeries

MultiSeries::MultiSeries(RingPtr ring, std::vector<Variable> vars, int truncation)
    : ring_(std::move(ring)), vars_(std::move(vars)), trunc_(truncation) {
    std::map<std::string, int> seen;
    for (const auto& v : vars_) {
        if (v.degree < 1) fail(ErrCode::InvalidArgument, "variable degree must be >= 1: " + v.name);
        if (!seen.emplace(v.name, v.degree).second)
            fail(ErrCode::InvalidArgument, "duplicate variable: " + v.name);
        if (ring_->find(v.name))
            fail(ErrCode::InvalidArgument, "variable shadows ring generator: " + v.name);
    }
    if (trunc_ < 0) fail(ErrCode::InvalidArgument, "series truncation must be non-negative");
}

MultiSeries MultiSeries::zero(RingPtr ring, std::vector<Variable> vars, int truncation) {
    return MultiSeries(std::move(ring), std::move(vars), truncation);
}

MultiSeries MultiSeries::constant(const RingElem& c, std::vector<Variable> vars, int truncation) {
    MultiSeries s(c.ring(), std::move(vars), truncation);
    s.insert_term(VarExp(s.vars_.size(), 0), c);
    return s;
}

MultiSeries MultiSeries::variable(const RingPtr& ring, const std::vector<Variable>& vars,
                                  const std::string& name, int truncation) {
    MultiSeries s(ring, vars, truncation);
    VarExp e(vars.size(), 0);
    e[s.var_index(name)] = 1;
    s.insert_term(e, RingElem::one(ring));
    return s;
}

size_t MultiSeries::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    fail(ErrCode::InvalidArgument, "unknown variable: " + name);
}

long MultiSeries::weighted_degree(const VarExp& e) const {
    long d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * vars_[i].degree;
    return d;
}

long MultiSeries::min_degree() const {
    long m = kExactTrunc;
    for (const auto& [e, c] : terms_) m = std::min(m, weighted_degree(e));
    return m;
}

void MultiSeries::insert_term(const VarExp& e, const RingElem& c) {
    if (c.is_zero()) return;
    if (e.size() != vars_.size()) fail(ErrCode::InvalidArgument, "exponent vector length mismatch");
    if (weighted_degree(e) > trunc_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

// Union of two variable lists; degrees must agree on shared names.
static std::vector<Variable> unify_vars(const std::vector<Variable>& a,
                                        const std::vector<Variable>& b) {
    std::vector<Variable> out = a;
    for (const auto& v : b) {
        bool found = false;
        for (const auto& w : out) {
            if (w.name == v.name) {
                if (w.degree != v.degree)
                    fail(ErrCode::InvalidArgument, "variable degree conflict: " + v.name);
                found = true;
                break;
            }
        }
        if (!found) out.push_back(v);
    }
    return out;
}

MultiSeries MultiSeries::with_variables(const std::vector<Variable>& vars) const {
    MultiSeries out(ring_, vars, trunc_);
    std::vector<size_t> where(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) where[i] = out.var_index(vars_[i].name);
    for (const auto& [e, c] : terms_) {
        VarExp ne(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
        out.insert_term(ne, c);
    }
    return out;
}

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
    require_same_ring(ring_, o.ring_);
    auto vars = unify_vars(vars_, o.vars_);
    int bound = std::min(trunc_, o.trunc_);
    MultiSeries a = with_variables(vars);
    MultiSeries out(ring_, vars, bound);
    for (const auto& [e, c] : a.terms()) out.insert_term(e, c);
    MultiSeries b = o.with_variables(vars);
    for (const auto& [e, c] : b.terms()) out.insert_term(e, c);
    return out;
}

MultiSeries MultiSeries::mul_to(const MultiSeries& o, long bound) const {
    require_same_ring(ring_, o.ring_);
    auto vars = unify_vars(vars_, o.vars_);
    MultiSeries a = with_variables(vars);
    MultiSeries b = o.with_variables(vars);
    // Soundness limit: unknown terms of one factor times the smallest term of
    // the other. Exact factors impose no limit.
    long limit = std::min(saturating_add(trunc_, b.min_degree()),
                          saturating_add(o.trunc_, a.min_degree()));
    limit = std::min(limit, bound);
    int t = static_cast<int>(std::min<long>(limit, kExactTrunc));
    MultiSeries out(ring_, vars, t);
    for (const auto& [ea, ca] : a.terms()) {
        long da = a.weighted_degree(ea);
        if (da > t) continue;
        for (const auto& [eb, cb] : b.terms()) {
            if (da + b.weighted_degree(eb) > t) continue;
            VarExp e(ea);
            for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
            out.insert_term(e, ca * cb);
        }
    }
    return out;
}

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
    return mul_to(o, std::min(trunc_, o.trunc_));
}

MultiSeries MultiSeries::square() const {
    // (known + err)^2 = known^2 + err^2 in characteristic 2, and err^2 sits
    // beyond degree 2*trunc, so squaring is sound to 2*trunc + 1.
    long limit = trunc_ >= kExactTrunc ? kExactTrunc : 2L * trunc_ + 1;
    int t = static_cast<int>(std::min<long>(limit, kExactTrunc));
    MultiSeries out(ring_, vars_, t);
    for (const auto& [e, c] : terms_) {
        VarExp d(e);
        for (auto& v : d) v *= 2;
        out.insert_term(d, c.square());
    }
    return out;
}

MultiSeries MultiSeries::pow_to(uint32_t k, long bound) const {
    MultiSeries acc = constant(RingElem::one(ring_), vars_, kExactTrunc);
    if (k == 0) return acc.truncate_to(static_cast<int>(std::min<long>(bound, kExactTrunc)));
    MultiSeries base = *this;
    while (true) {
        if (k & 1u) acc = acc.mul_to(base, bound);
        k >>= 1;
        if (!k) break;
        base = base.square().truncate_to(static_cast<int>(std::min<long>(bound, kExactTrunc)));
    }
    return acc;
}

// Powers keep the knowledge the Frobenius provides: squaring doubles every
// exponent exactly, so pow(f,2) is sound past f's own truncation.
MultiSeries MultiSeries::pow(uint32_t k) const { return pow_to(k, kExactTrunc); }

MultiSeries MultiSeries::scale(const RingElem& c) const {
    require_same_ring(ring_, c.ring());
    MultiSeries out(ring_, vars_, trunc_);
    for (const auto& [e, t] : terms_) out.insert_term(e, t * c);
    return out;
}

MultiSeries MultiSeries::substitute(const std::map<std::string, MultiSeries>& images) const {
    return substitute_to(images, trunc_);
}

MultiSeries MultiSeries::substitute_to(const std::map<std::string, MultiSeries>& images,
                                       long bound) const {
    for (const auto& [name, img] : images) {
        var_index(name); // unknown variable -> error
        require_same_ring(ring_, img.ring());
        if (!img.coefficient(VarExp(img.vars().size(), 0)).is_zero())
            fail(ErrCode::InvalidArgument,
                 "substitution image for " + name + " has a nonzero constant term");
    }
    // Result variables: images' variables, plus untouched variables of f.
    std::vector<Variable> vars;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (!images.count(vars_[i].name)) vars = unify_vars(vars, {vars_[i]});
    long limit = std::min<long>(bound, trunc_);
    for (const auto& [name, img] : images) {
        vars = unify_vars(vars, img.vars());
        limit = std::min(limit, static_cast<long>(img.truncation()));
    }
    int t = static_cast<int>(std::min<long>(limit, kExactTrunc));
    MultiSeries out(ring_, vars, t);

    // Per-variable image in the unified variable list, with cached powers.
    std::vector<MultiSeries> base(vars_.size());
    std::vector<std::vector<MultiSeries>> powers(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = images.find(vars_[i].name);
        MultiSeries img = it != images.end()
                              ? it->second.with_variables(vars)
                              : variable(ring_, vars, vars_[i].name).truncate_to(kExactTrunc);
        base[i] = img.truncate_to(t);
        powers[i] = {constant(RingElem::one(ring_), vars, kExactTrunc), base[i]};
    }
    auto power = [&](size_t i, uint32_t k) -> const MultiSeries& {
        while (powers[i].size() <= k)
            powers[i].push_back(powers[i].back().mul_to(base[i], t));
        return powers[i][k];
    };
    for (const auto& [e, c] : terms_) {
        MultiSeries prod = constant(c, vars, kExactTrunc);
        for (size_t i = 0; i < e.size() && !prod.is_zero(); ++i)
            if (e[i] > 0) prod = prod.mul_to(power(i, e[i]), t);
        for (const auto& [pe, pc] : prod.terms()) out.insert_term(pe, pc);
    }
    return out;
}

RingElem MultiSeries::coefficient(const VarExp& exps) const {
    if (exps.size() != vars_.size())
        fail(ErrCode::InvalidArgument, "exponent vector length mismatch");
    auto it = terms_.find(exps);
    return it == terms_.end() ? RingElem::zero(ring_) : it->second;
}

MultiSeries MultiSeries::coefficient_of(const std::string& var, uint32_t k) const {
    size_t idx = var_index(var);
    std::vector<Variable> vars;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (i != idx) vars.push_back(vars_[i]);
    long rem = trunc_ >= kExactTrunc
                   ? kExactTrunc
                   : static_cast<long>(trunc_) - static_cast<long>(k) * vars_[idx].degree;
    MultiSeries out(ring_, vars, static_cast<int>(std::clamp<long>(rem, 0, kExactTrunc)));
    for (const auto& [e, c] : terms_) {
        if (e[idx] != k) continue;
        VarExp ne;
        ne.reserve(e.size() - 1);
        for (size_t i = 0; i < e.size(); ++i)
            if (i != idx) ne.push_back(e[i]);
        out.insert_term(ne, c);
    }
    return out;
}

uint32_t MultiSeries::max_exponent(const std::string& var) const {
    size_t idx = var_index(var);
    uint32_t m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e[idx]);
    return m;
}

MultiSeries MultiSeries::frobenius_sqrt() const {
    MultiSeries out(ring_, vars_, trunc_);
    for (const auto& [e, c] : terms_) {
        VarExp h(e);
        for (auto& v : h) {
            if (v % 2 != 0)
                fail(ErrCode::NotASquare, "not a square: odd exponent in " + term_text(e));
            v /= 2;
        }
        out.insert_term(h, c.frobenius_sqrt());
    }
    return out;
}

MultiSeries MultiSeries::truncate_to(int bound) const {
    // knowledge never grows: the result bound is capped by the current one
    MultiSeries out(ring_, vars_, std::max(std::min(bound, trunc_), 0));
    for (const auto& [e, c] : terms_) out.insert_term(e, c);
    return out;
}

MultiSeries MultiSeries::cap_variable(const std::string& var, uint32_t cap) const {
    size_t idx = var_index(var);
    MultiSeries out(ring_, vars_, trunc_);
    for (const auto& [e, c] : terms_)
        if (e[idx] < cap) out.insert_term(e, c);
    return out;
}

MultiSeries MultiSeries::rename_variable(const std::string& from, const Variable& to) const {
    size_t idx = var_index(from);
    std::vector<Variable> vars = vars_;
    vars[idx] = to;
    MultiSeries out(ring_, vars, trunc_);
    for (const auto& [e, c] : terms_) out.insert_term(e, c);
    return out;
}

MultiSeries MultiSeries::map_coefficients(const RingPtr& target,
                                          const std::map<std::string, RingElem>& gen_images) const {
    MultiSeries out(target, vars_, trunc_);
    for (const auto& [e, c] : terms_) out.insert_term(e, c.substitute_gens(target, gen_images));
    return out;
}

std::optional<long> MultiSeries::homogeneous_degree() const {
    std::optional<long> deg;
    for (const auto& [e, c] : terms_) {
        long vd = weighted_degree(e);
        for (const auto& m : c.terms()) {
            long d = vd + ring_->degree_of(m);
            if (!deg)
                deg = d;
            else if (*deg != d)
                return std::nullopt;
        }
    }
    return deg;
}

std::optional<VarExp> MultiSeries::first_difference(const MultiSeries& o) const {
    auto vars = unify_vars(vars_, o.vars_);
    MultiSeries diff = with_variables(vars) + o.with_variables(vars);
    if (diff.is_zero()) return std::nullopt;
    return diff.terms().begin()->first;
}

bool MultiSeries::equal_values(const MultiSeries& o) const { return !first_difference(o); }

std::string MultiSeries::term_text(const VarExp& e) const {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (any) os << "*";
        any = true;
        os << vars_[i].name;
        if (e[i] > 1) os << "^" << e[i];
    }
    if (!any) os << "1";
    return os.str();
}

std::string MultiSeries::to_text() const {
    if (terms_.empty()) return "0";
    // graded order, then reverse-lex, so x precedes y
    std::vector<const std::pair<const VarExp, RingElem>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) {
        long da = weighted_degree(a->first), db = weighted_degree(b->first);
        if (da != db) return da < db;
        return b->first < a->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : order) {
        if (!first) os << " + ";
        first = false;
        const auto& [e, c] = *t;
        bool var_part = std::any_of(e.begin(), e.end(), [](uint32_t v) { return v > 0; });
        if (c.is_one()) {
            os << term_text(e);
        } else if (!var_part) {
            os << c.to_text();
        } else if (c.terms().size() == 1) {
            os << c.to_text() << "*" << term_text(e);
        } else {
            os << "(" << c.to_text() << ")*" << term_text(e);
        }
    }
    return os.str();
}

std::string MultiSeries::json_text() const {
    nlohmann::json j;
    j["vars"] = nlohmann::json::array();
    for (const auto& v : vars_) j["vars"].push_back({{"name", v.name}, {"deg", v.degree}});
    j["terms"] = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
        nlohmann::json term;
        term["exp"] = e;
        term["coeff"] = nlohmann::json::array();
        for (const auto& m : c.terms()) term["coeff"].push_back({{"gexp", m}});
        j["terms"].push_back(std::move(term));
    }
    return j.dump();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }
    uint32_t integer() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail(ErrCode::Parse, "expected integer at position " + std::to_string(pos));
        uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<uint64_t>(text[pos] - '0');
            if (v > 1'000'000) fail(ErrCode::Parse, "integer too large");
            ++pos;
        }
        return static_cast<uint32_t>(v);
    }
};

} // namespace

MultiSeries parse_series(const RingPtr& ring, const std::vector<Variable>& vars,
                         const std::string& text) {
    Lexer lx{text};
    MultiSeries out = MultiSeries::zero(ring, vars, kExactTrunc);

    auto parse_factor = [&](VarExp& ve, RingElem& coeff, bool& zero) {
        char c = lx.peek();
        uint32_t exp = 1;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            uint32_t v = lx.integer();
            if (lx.accept('^')) lx.integer(); // n^k stays 0 or 1 mod 2
            if (v % 2 == 0) zero = true;
            return;
        }
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
            fail(ErrCode::Parse, "unexpected character '" + std::string(1, c) + "' at position " +
                                     std::to_string(lx.pos));
        std::string name = lx.ident();
        if (lx.accept('^')) exp = lx.integer();
        for (size_t i = 0; i < vars.size(); ++i) {
            if (vars[i].name == name) {
                ve[i] += exp;
                return;
            }
        }
        if (ring->find(name)) {
            coeff = coeff * RingElem::generator(ring, name).pow(exp);
            if (coeff.is_zero()) zero = true;
            return;
        }
        fail(ErrCode::Parse, "unknown identifier: " + name);
    };

    if (lx.eof()) fail(ErrCode::Parse, "empty series text");
    do {
        VarExp ve(vars.size(), 0);
        RingElem coeff = RingElem::one(ring);
        bool zero = false;
        parse_factor(ve, coeff, zero);
        while (lx.accept('*')) parse_factor(ve, coeff, zero);
        if (!zero) out.insert_term(ve, coeff);
    } while (lx.accept('+'));
    if (!lx.eof())
        fail(ErrCode::Parse, "unexpected trailing input at position " + std::to_string(lx.pos));
    return out;
}

std::vector<std::string> scan_identifiers(const std::string& text) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            std::string name = text.substr(start, i - start);
            if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
        } else {
            ++i;
        }
    }
    return out;
}

} // namespace epsq
