#include "fgl.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <json.hpp>

namespace epsq {

std::string FglValidation::first_failure() const {
    if (!unit.passed) return "unit";
    if (!commutative.passed) return "commutative";
    if (!associative.passed) return "associative";
    if (!order_two.passed) return "order_two";
    return "";
}

const IdentityCheck& FglValidation::check(const std::string& name) const {
    if (name == "unit") return unit;
    if (name == "commutative") return commutative;
    if (name == "associative") return associative;
    if (name == "order_two") return order_two;
    fail(ErrCode::InvalidArgument, "unknown identity: " + name);
}

namespace {

const Variable* find_var(const MultiSeries& s, const std::string& name) {
    for (const auto& v : s.vars())
        if (v.name == name) return &v;
    return nullptr;
}

std::string clip(std::string text) {
    if (text.size() > 160) text = text.substr(0, 157) + "...";
    return text;
}

IdentityCheck compare(const MultiSeries& a, const MultiSeries& b, int degree,
                      const std::string& what) {
    IdentityCheck c;
    c.degree = degree;
    MultiSeries ta = a.truncate_to(degree);
    MultiSeries tb = b.truncate_to(degree);
    auto diff = ta.first_difference(tb);
    if (!diff) {
        c.passed = true;
    } else {
        MultiSeries d = ta + tb;
        c.witness = what + d.term_text(*diff);
    }
    return c;
}

} // namespace

FglValidation FormalGroupLaw::validate(const MultiSeries& f, int degree, const std::string& x,
                                       const std::string& y) {
    const Variable* vx = find_var(f, x);
    const Variable* vy = find_var(f, y);
    if (!vx || !vy) fail(ErrCode::InvalidArgument, "law must use variables " + x + " and " + y);
    if (!f.coefficient(VarExp(f.vars().size(), 0)).is_zero())
        fail(ErrCode::InvalidArgument, "law has a nonzero constant term");
    degree = static_cast<int>(std::min<long>(degree, f.truncation()));

    const RingPtr& ring = f.ring();
    MultiSeries sx = MultiSeries::variable(ring, f.vars(), x);
    MultiSeries sy = MultiSeries::variable(ring, f.vars(), y);
    MultiSeries zero_s = MultiSeries::zero(ring, f.vars());

    FglValidation v;
    {
        MultiSeries fx0 = f.substitute_to({{y, zero_s}}, degree).truncate_to(degree);
        MultiSeries f0y = f.substitute_to({{x, zero_s}}, degree).truncate_to(degree);
        v.unit.degree = degree;
        if (!fx0.equal_values(sx.with_variables(fx0.vars()).truncate_to(degree))) {
            v.unit.witness = "F(" + x + ",0) = " + clip(fx0.to_text());
        } else if (!f0y.equal_values(sy.with_variables(f0y.vars()).truncate_to(degree))) {
            v.unit.witness = "F(0," + y + ") = " + clip(f0y.to_text());
        } else {
            v.unit.passed = true;
        }
    }
    v.commutative = compare(f, f.substitute_to({{x, sy}, {y, sx}}, degree), degree,
                            "F(x,y) + F(y,x) contains ");
    {
        // F(F(x,y),z) vs F(x,F(y,z)) with a fresh right slot z
        std::string z = "z";
        while (find_var(f, z) || ring->find(z)) z += "_";
        std::vector<Variable> vars3 = f.vars();
        vars3.push_back({z, vx->degree});
        MultiSeries f3 = f.with_variables(vars3);
        MultiSeries sz = MultiSeries::variable(ring, vars3, z);
        MultiSeries sy3 = sy.with_variables(vars3);
        MultiSeries inner = f3.substitute_to({{x, sy3}, {y, sz}}, degree);
        MultiSeries right = f3.substitute_to({{y, inner}}, degree);
        MultiSeries left = f3.substitute_to({{x, f3}, {y, sz}}, degree);
        v.associative = compare(left, right, degree, "associator contains ");
    }
    {
        MultiSeries fxx = f.substitute_to({{y, sx}}, degree).truncate_to(degree);
        v.order_two.degree = degree;
        if (fxx.is_zero())
            v.order_two.passed = true;
        else
            v.order_two.witness = "F(" + x + "," + x + ") = " + clip(fxx.to_text());
    }
    return v;
}

FormalGroupLaw FormalGroupLaw::make(const MultiSeries& f, int degree, const std::string& x,
                                    const std::string& y) {
    FglValidation v = validate(f, degree, x, y);
    if (!v.law_ok()) {
        const std::string id = v.first_failure();
        fail(ErrCode::ValidationFailed, id + " fails: " + v.check(id).witness);
    }
    int deg = static_cast<int>(std::min<long>(degree, f.truncation()));
    return FormalGroupLaw(f, deg, x, y, std::move(v));
}

FormalGroupLaw FormalGroupLaw::additive(const RingPtr& ring, int degree, int grade) {
    std::vector<Variable> vars{{"x", grade}, {"y", grade}};
    MultiSeries f = MultiSeries::variable(ring, vars, "x") + MultiSeries::variable(ring, vars, "y");
    return make(f, degree);
}

bool FormalGroupLaw::is_additive() const {
    MultiSeries lin = MultiSeries::variable(ring(), series_.vars(), x_) +
                      MultiSeries::variable(ring(), series_.vars(), y_);
    return series_.equal_values(lin);
}

MultiSeries FormalGroupLaw::coefficient(uint32_t i, uint32_t j) const {
    return series_.coefficient_of(x_, i).coefficient_of(y_, j);
}

std::string FormalGroupLaw::json_text() const {
    nlohmann::json j = nlohmann::json::parse(series_.json_text());
    nlohmann::json flags = nlohmann::json::object();
    auto put = [&](const char* name, const IdentityCheck& c) {
        if (c.passed) flags[name] = c.degree;
    };
    put("unit", checks_.unit);
    put("commutative", checks_.commutative);
    put("associative", checks_.associative);
    put("order_two", checks_.order_two);
    j["flags"] = std::move(flags);
    return j.dump();
}

MorphismReport is_morphism(const MultiSeries& h, const std::string& hvar, const FormalGroupLaw& F,
                           const FormalGroupLaw& G, std::optional<int> degree) {
    if (!F.ring()->same(*G.ring()) || !F.ring()->same(*h.ring()))
        fail(ErrCode::RingMismatch, "morphism data over different rings");
    if (!find_var(h, hvar)) fail(ErrCode::InvalidArgument, "h does not use variable " + hvar);
    if (!h.coefficient(VarExp(h.vars().size(), 0)).is_zero())
        fail(ErrCode::InvalidArgument, "h must have zero constant term");

    long bound = std::min({static_cast<long>(h.truncation()),
                           static_cast<long>(F.series().truncation()),
                           static_cast<long>(G.series().truncation())});
    bound = std::min(bound,
                     static_cast<long>(degree.value_or(std::min(F.degree(), G.degree()))));
    int deg = static_cast<int>(std::min<long>(bound, kExactTrunc));

    const Variable* gx = find_var(G.series(), G.var_x());
    const Variable* gy = find_var(G.series(), G.var_y());
    MultiSeries hx = hvar == G.var_x() ? h : h.rename_variable(hvar, {G.var_x(), gx->degree});
    MultiSeries hy = h.rename_variable(hvar, {G.var_y(), gy->degree});

    MultiSeries lhs = h.substitute_to({{hvar, F.series()}}, deg);
    MultiSeries rhs = G.series().substitute_to({{G.var_x(), hx}, {G.var_y(), hy}}, deg);

    MorphismReport r;
    r.degree = deg;
    MultiSeries tl = lhs.truncate_to(deg);
    MultiSeries tr = rhs.truncate_to(deg);
    auto diff = tl.first_difference(tr);
    if (!diff) {
        r.ok = true;
    } else {
        MultiSeries d = tl + tr;
        r.witness = d.term_text(*diff);
    }
    return r;
}

std::pair<MultiSeries, int> TwistResult::coefficient_series(uint32_t i, uint32_t j,
                                                            const std::string& var) const {
    int depth = solved_degree - 2 * static_cast<int>(i + j);
    MultiSeries out(law.ring(), {{var, 1}}, std::max(depth, 0));
    for (const auto& [key, c] : table) {
        auto [ti, tj, tk] = key;
        if (ti == i && tj == j) out.insert_term({tk}, c);
    }
    return {out, depth};
}

TwistResult lubin_twist(const FormalGroupLaw& F, std::optional<int> degree, uint64_t order_seed) {
    if (!F.order_two())
        fail(ErrCode::OrderTwoRequired, "twist requires a law with the order-two flag");
    if (F.series().vars().size() != 2)
        fail(ErrCode::InvalidArgument, "twist input must be a plain bivariate law");

    const RingPtr& ring = F.ring();
    int requested = degree.value_or(F.degree());
    bool exact_input = F.series().exact();
    // Exact inputs are solved deep enough that every slot of the output
    // truncation is determined; slot (i,j,k) needs identity degree 2(i+j)+k.
    // That only makes sense while the polynomial stays a law, so the deeper
    // target is used when the identities still hold there.
    int W;
    if (exact_input) {
        W = 2 * requested;
        if (!FormalGroupLaw::validate(F.series(), W, F.var_x(), F.var_y()).all_passed()) {
            W = std::min(requested, F.degree());
            exact_input = false;
        }
    } else {
        W = std::min(requested, F.series().truncation());
    }

    std::string tname = "t";
    while (find_var(F.series(), tname) || ring->find(tname)) tname += "_";
    std::vector<Variable> vars3 = F.series().vars();
    vars3.push_back({tname, 1});

    MultiSeries f3 = F.series().with_variables(vars3);
    if (!exact_input) f3 = f3.truncate_to(W);
    MultiSeries st = MultiSeries::variable(ring, vars3, tname);
    MultiSeries sx = MultiSeries::variable(ring, vars3, F.var_x());
    MultiSeries sy = MultiSeries::variable(ring, vars3, F.var_y());

    MultiSeries hx = sx.mul_to(f3.substitute_to({{F.var_y(), st}}, W), W);
    MultiSeries hy = sy.mul_to(f3.substitute_to({{F.var_x(), sy}, {F.var_y(), st}}, W), W);
    // h(F(x,y)) = F(x,y) * F(F(x,y), t)
    MultiSeries lhs = f3.mul_to(f3.substitute_to({{F.var_x(), f3}, {F.var_y(), st}}, W), W);

    MultiSeries residual = lhs + hx + hy;

    std::vector<MultiSeries> xp{MultiSeries::constant(RingElem::one(ring), vars3), hx};
    std::vector<MultiSeries> yp{MultiSeries::constant(RingElem::one(ring), vars3), hy};
    auto powx = [&](uint32_t k) -> const MultiSeries& {
        while (xp.size() <= k) xp.push_back(xp.back().mul_to(hx, W));
        return xp[k];
    };
    auto powy = [&](uint32_t k) -> const MultiSeries& {
        while (yp.size() <= k) yp.push_back(yp.back().mul_to(hy, W));
        return yp[k];
    };

    TwistResult result{FormalGroupLaw::additive(ring, 2), 0, 0, {}};
    std::mt19937_64 rng(order_seed);

    for (int s = 4; s <= W; ++s) {
        // slots (i, j, k) with i <= j, i+j = m, 2m + k = s; the system couples
        // a slot only to strictly lower levels, so any order inside a level
        // gives the same solution.
        std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> level;
        for (int m = 2; 2 * m <= s; ++m) {
            uint32_t k = static_cast<uint32_t>(s - 2 * m);
            for (uint32_t i = 1; 2 * i <= static_cast<uint32_t>(m); ++i)
                level.emplace_back(i, static_cast<uint32_t>(m) - i, k);
        }
        if (order_seed != 0 && level.size() > 1) {
            for (size_t a = level.size() - 1; a > 0; --a)
                std::swap(level[a], level[rng() % (a + 1)]);
        }
        for (auto [i, j, k] : level) {
            uint32_t m = i + j;
            VarExp target(vars3.size(), 0);
            target[0] = i;
            target[1] = j;
            target[2] = m + k;
            RingElem c = residual.coefficient(target);
            result.table[{i, j, k}] = c;
            if (i != j) result.table[{j, i, k}] = c;
            if (c.is_zero()) continue;
            MultiSeries sub = powx(i).mul_to(powy(j), W);
            if (i != j) sub = sub + powx(j).mul_to(powy(i), W);
            if (k > 0) sub = sub.mul_to(st.pow_to(k, W), W);
            residual = residual + sub.scale(c);
        }
    }

    if (!residual.is_zero()) {
        auto it = residual.terms().begin();
        fail(ErrCode::SolverInconsistent,
             "twist solve left an unmatched term " + residual.term_text(it->first) +
                 " (input violates the order-two hypothesis within truncation)");
    }

    int out_trunc = exact_input ? requested : W;
    MultiSeries ft(ring, vars3, out_trunc);
    VarExp ex(vars3.size(), 0);
    ex[0] = 1;
    ft.insert_term(ex, RingElem::one(ring));
    VarExp ey(vars3.size(), 0);
    ey[1] = 1;
    ft.insert_term(ey, RingElem::one(ring));
    for (const auto& [key, c] : result.table) {
        auto [i, j, k] = key;
        VarExp e(vars3.size(), 0);
        e[0] = i;
        e[1] = j;
        e[2] = k;
        ft.insert_term(e, c);
    }

    // Slots between half the solved degree and the solved degree can be
    // incomplete for truncated inputs; fall back to the ball that is.
    int full = std::min(out_trunc, W);
    FglValidation v = FormalGroupLaw::validate(ft, full);
    int validated = full;
    if (!v.all_passed()) {
        validated = W / 2;
        v = FormalGroupLaw::validate(ft, validated);
        if (!v.all_passed())
            fail(ErrCode::SolverInconsistent, "twist result fails " + v.first_failure() +
                                                  " at degree " + std::to_string(validated));
    }
    result.law = FormalGroupLaw::make(ft, validated);
    result.solved_degree = W;
    result.validated_degree = validated;
    return result;
}

// Matching F(x^a,y^a) = H(x,y)^a slot by slot pairs coefficient (i,j) of F
// with coefficient (i,j) of H, so both directions act coefficient-wise and
// leave the variable exponents alone.
FormalGroupLaw square_compose(const FormalGroupLaw& G, uint32_t a) {
    if (a == 0) fail(ErrCode::InvalidArgument, "grade multiple must be positive");
    const MultiSeries& g = G.series();
    MultiSeries out(g.ring(), g.vars(), g.truncation());
    for (const auto& [e, c] : g.terms()) out.insert_term(e, c.pow(a));
    return FormalGroupLaw::make(out, G.degree(), G.var_x(), G.var_y());
}

FormalGroupLaw frobenius_descend(const FormalGroupLaw& F, uint32_t a) {
    if (a == 0 || (a & (a - 1)) != 0)
        fail(ErrCode::InvalidArgument, "descent factor must be a power of two");
    const MultiSeries& f = F.series();
    MultiSeries out(f.ring(), f.vars(), f.truncation());
    try {
        for (const auto& [e, c] : f.terms()) {
            RingElem root = c;
            for (uint32_t v = a; v > 1; v /= 2) root = root.frobenius_sqrt();
            out.insert_term(e, root);
        }
    } catch (const Error& e) {
        if (e.code() == ErrCode::NotASquare)
            fail(ErrCode::NotCompatible, std::string("no compatible descent: ") + e.what());
        throw;
    }
    return FormalGroupLaw::make(out, F.degree(), F.var_x(), F.var_y());
}

// ---------------------------------------------------------------------------
// universal order-two law

namespace {

struct LinearRow {
    uint64_t mask = 0; // unknown coefficients present in the equation
    RingElem rhs;      // known part, over the temp-free generators
};

// Split every term of `s` into unknown-linear and known parts and append the
// resulting rows. Unknowns are the generators at index >= first_unknown.
void collect_rows(const MultiSeries& s, size_t first_unknown, std::vector<LinearRow>& rows) {
    for (const auto& [ve, coeff] : s.terms()) {
        LinearRow row{0, RingElem::zero(coeff.ring())};
        for (const auto& mono : coeff.terms()) {
            uint64_t total = 0;
            int which = -1;
            bool other = false;
            for (size_t g = 0; g < mono.size(); ++g) {
                if (mono[g] == 0) continue;
                if (g >= first_unknown) {
                    total += mono[g];
                    which = static_cast<int>(g - first_unknown);
                } else {
                    other = true;
                }
            }
            if (total == 0) {
                row.rhs = row.rhs + RingElem::monomial(coeff.ring(), mono);
            } else if (total == 1 && !other) {
                row.mask ^= 1ull << which;
            } else {
                fail(ErrCode::SolverInconsistent, "constraint is not linear in the unknowns");
            }
        }
        if (row.mask != 0 || !row.rhs.is_zero()) rows.push_back(std::move(row));
    }
}

} // namespace

UniversalResult universal_order_two(int max_degree, int grade) {
    if (max_degree < 2) fail(ErrCode::InvalidArgument, "max_degree must be at least 2");
    if (grade < 1) fail(ErrCode::InvalidArgument, "grade must be positive");

    // The ring truncation is a resource bound here; keep it far above every
    // coefficient degree this construction and its downstream checks reach.
    const int ring_trunc = 64 * std::max(max_degree, 4);
    RingPtr ring = CoeffRing::f2(ring_trunc);
    UniversalResult result{FormalGroupLaw::additive(ring, 2, grade), ring, {}};

    std::vector<Variable> vars{{"x", grade}, {"y", grade}};
    MultiSeries f = MultiSeries::variable(ring, vars, "x") + MultiSeries::variable(ring, vars, "y");

    for (int d = 2; d <= max_degree; ++d) {
        // unknown slots a_{ij}, i <= j, i+j = d, i,j >= 1
        std::vector<std::pair<uint32_t, uint32_t>> slots;
        for (uint32_t i = 1; 2 * i <= static_cast<uint32_t>(d); ++i)
            slots.emplace_back(i, static_cast<uint32_t>(d) - i);
        size_t n = slots.size();
        if (n > 60) fail(ErrCode::InvalidArgument, "degree too large for the solver");

        std::vector<Generator> temps;
        for (auto [i, j] : slots)
            temps.push_back(
                {"_u" + std::to_string(i) + "_" + std::to_string(j), grade * (1 - d)});
        RingPtr tmp_ring = ring->extend(temps);
        size_t first_unknown = ring->gen_count();

        int work = grade * d;
        MultiSeries cand = f.map_coefficients(tmp_ring, {}).truncate_to(work);
        for (size_t s = 0; s < n; ++s) {
            auto [i, j] = slots[s];
            RingElem u = RingElem::generator(tmp_ring, temps[s].name);
            cand.insert_term(VarExp{i, j}, u);
            if (i != j) cand.insert_term(VarExp{j, i}, u);
        }

        MultiSeries sx = MultiSeries::variable(tmp_ring, vars, "x");
        MultiSeries sy = MultiSeries::variable(tmp_ring, vars, "y");
        std::vector<LinearRow> rows;
        // order two: F(x,x) = 0
        collect_rows(cand.substitute_to({{"y", sx}}, work), first_unknown, rows);
        // associativity: F(F(x,y),z) + F(x,F(y,z)) = 0
        {
            std::vector<Variable> vars3 = vars;
            vars3.push_back({"z", grade});
            MultiSeries c3 = cand.with_variables(vars3);
            MultiSeries sz = MultiSeries::variable(tmp_ring, vars3, "z");
            MultiSeries sy3 = sy.with_variables(vars3);
            MultiSeries inner = c3.substitute_to({{"x", sy3}, {"y", sz}}, work);
            MultiSeries assoc = c3.substitute_to({{"x", c3}, {"y", sz}}, work) +
                                c3.substitute_to({{"y", inner}}, work);
            collect_rows(assoc, first_unknown, rows);
        }

        // Gaussian elimination over F_2, carrying the known parts along.
        std::vector<int> pivot_row(n, -1);
        std::vector<bool> used(rows.size(), false);
        for (size_t col = 0; col < n; ++col) {
            uint64_t bit = 1ull << col;
            int pr = -1;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (!used[r] && (rows[r].mask & bit)) {
                    pr = static_cast<int>(r);
                    break;
                }
            }
            if (pr < 0) continue;
            used[static_cast<size_t>(pr)] = true;
            pivot_row[col] = pr;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (static_cast<int>(r) != pr && (rows[r].mask & bit)) {
                    rows[r].mask ^= rows[static_cast<size_t>(pr)].mask;
                    rows[r].rhs = rows[r].rhs + rows[static_cast<size_t>(pr)].rhs;
                }
            }
        }
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!used[r] && rows[r].mask == 0 && !rows[r].rhs.is_zero())
                fail(ErrCode::SolverInconsistent, "no solution at degree " + std::to_string(d));
        }

        // free columns become fresh generators, in slot order
        std::vector<Generator> fresh;
        std::map<size_t, std::string> free_name;
        size_t k = 0;
        for (size_t col = 0; col < n; ++col) {
            if (pivot_row[col] >= 0) continue;
            std::string name = "g" + std::to_string(d) + "_" + std::to_string(k);
            free_name[col] = name;
            fresh.push_back({name, grade * (1 - d)});
            auto [i, j] = slots[col];
            result.fresh.push_back({name, grade * (1 - d), i, j});
            ++k;
        }
        RingPtr next = ring->extend(fresh);

        std::vector<RingElem> value(n, RingElem::zero(next));
        for (size_t col = 0; col < n; ++col)
            if (pivot_row[col] < 0) value[col] = RingElem::generator(next, free_name[col]);
        for (size_t col = 0; col < n; ++col) {
            if (pivot_row[col] < 0) continue;
            const LinearRow& row = rows[static_cast<size_t>(pivot_row[col])];
            RingElem v = row.rhs.migrate(next);
            for (size_t c2 = 0; c2 < n; ++c2) {
                if (c2 != col && (row.mask & (1ull << c2))) {
                    if (pivot_row[c2] >= 0)
                        fail(ErrCode::SolverInconsistent, "echelon form has a tangled pivot");
                    v = v + value[c2];
                }
            }
            value[col] = v;
        }

        MultiSeries next_f = f.map_coefficients(next, {});
        for (size_t s = 0; s < n; ++s) {
            if (value[s].is_zero()) continue;
            auto [i, j] = slots[s];
            next_f.insert_term(VarExp{i, j}, value[s]);
            if (i != j) next_f.insert_term(VarExp{j, i}, value[s]);
        }
        ring = next;
        f = std::move(next_f);
    }

    MultiSeries out = f.truncate_to(grade * max_degree);
    result.law = FormalGroupLaw::make(out, grade * max_degree);
    result.ring = ring;
    if (!result.law.order_two())
        fail(ErrCode::SolverInconsistent, "universal construction lost the order-two identity");
    return result;
}

} // namespace epsq
