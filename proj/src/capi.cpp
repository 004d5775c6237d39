#include "epsq.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "covering.hpp"
#include "dring.hpp"
#include "fgl.hpp"
#include "series.hpp"
#include "steenrod.hpp"

struct epsq_ring {
    epsq::RingPtr ring;
};
struct epsq_series {
    epsq::MultiSeries s;
};
struct epsq_fgl {
    epsq::FormalGroupLaw law;
};
struct epsq_twist {
    epsq::TwistResult tw;
};
struct epsq_dring {
    epsq::DRing model;
};
struct epsq_cover {
    epsq::Covering c;
};

namespace {

thread_local std::string g_last_error;

epsq_status map_code(epsq::ErrCode code) {
    switch (code) {
        case epsq::ErrCode::InvalidArgument: return EPSQ_INVALID_ARGUMENT;
        case epsq::ErrCode::Parse: return EPSQ_PARSE_ERROR;
        case epsq::ErrCode::RingMismatch: return EPSQ_RING_MISMATCH;
        case epsq::ErrCode::NotASquare: return EPSQ_NOT_A_SQUARE;
        case epsq::ErrCode::OrderTwoRequired: return EPSQ_ORDER_TWO_REQUIRED;
        case epsq::ErrCode::SolverInconsistent: return EPSQ_SOLVER_INCONSISTENT;
        case epsq::ErrCode::NotCompatible: return EPSQ_NOT_COMPATIBLE;
        case epsq::ErrCode::NonHomogeneous: return EPSQ_NON_HOMOGENEOUS;
        case epsq::ErrCode::NonAdditiveModel: return EPSQ_NON_ADDITIVE_MODEL;
        case epsq::ErrCode::MissingCoefficientAction: return EPSQ_MISSING_COEFFICIENT_ACTION;
        case epsq::ErrCode::NonConstantSheets: return EPSQ_NON_CONSTANT_SHEETS;
        case epsq::ErrCode::CompatibilityViolated: return EPSQ_COMPATIBILITY_VIOLATED;
        case epsq::ErrCode::ValidationFailed: return EPSQ_VALIDATION_FAILED;
        case epsq::ErrCode::Internal: return EPSQ_INTERNAL_ERROR;
    }
    return EPSQ_INTERNAL_ERROR;
}

template <typename Fn>
epsq_status guarded(Fn&& fn) {
    try {
        fn();
        return EPSQ_OK;
    } catch (const epsq::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return EPSQ_INTERNAL_ERROR;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool cond, const char* what) {
    if (!cond) epsq::fail(epsq::ErrCode::InvalidArgument, what);
}

std::vector<epsq::Variable> make_vars(const char* const* names, const int* degrees,
                                      size_t count) {
    std::vector<epsq::Variable> vars;
    for (size_t i = 0; i < count; ++i)
        vars.push_back({names[i], degrees ? degrees[i] : 1});
    return vars;
}

nlohmann::json identity_json(const epsq::IdentityCheck& c) {
    return {{"passed", c.passed}, {"degree", c.degree}, {"witness", c.witness}};
}

nlohmann::json report_json(const epsq::AxiomReport& r) {
    nlohmann::json j;
    j["axiom"] = r.axiom;
    j["verified_degree"] = r.verified_degree;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : r.failures)
        j["failures"].push_back({{"element", f.element}, {"witness_monomial", f.witness}});
    return j;
}

std::vector<std::pair<epsq::MultiSeries, epsq::MultiSeries>>
sample_pairs(const epsq::DRing& d, uint64_t seed) {
    auto samples = d.default_samples(seed);
    std::vector<std::pair<epsq::MultiSeries, epsq::MultiSeries>> pairs;
    for (size_t i = 0; i + 1 < samples.size(); i += 2)
        pairs.emplace_back(samples[i], samples[i + 1]);
    return pairs;
}

epsq::AxiomReport run_check(const epsq::DRing& d, const std::string& axiom, uint64_t seed) {
    if (axiom == "D1") return d.check_d1(d.default_samples(seed));
    if (axiom == "D2") return d.check_d2();
    if (axiom == "D3") return d.check_d3(d.default_samples(seed));
    if (axiom == "hom") return d.check_hom(sample_pairs(d, seed));
    epsq::fail(epsq::ErrCode::InvalidArgument, "unknown axiom " + axiom);
}

} // namespace

extern "C" {

const char* epsq_last_error(void) { return g_last_error.c_str(); }
void epsq_free_string(char* s) { std::free(s); }

void epsq_ring_free(epsq_ring* p) { delete p; }
void epsq_series_free(epsq_series* p) { delete p; }
void epsq_fgl_free(epsq_fgl* p) { delete p; }
void epsq_twist_free(epsq_twist* p) { delete p; }
void epsq_dring_free(epsq_dring* p) { delete p; }
void epsq_cover_free(epsq_cover* p) { delete p; }

epsq_status epsq_ring_new(const char* const* names, const int* degrees, size_t count,
                          int truncation, epsq_ring** out) {
    return guarded([&] {
        require(out && (count == 0 || (names && degrees)), "bad arguments");
        std::vector<epsq::Generator> gens;
        for (size_t i = 0; i < count; ++i) gens.push_back({names[i], degrees[i]});
        *out = new epsq_ring{epsq::CoeffRing::make(std::move(gens), truncation)};
    });
}

epsq_status epsq_series_parse(const epsq_ring* ring, const char* const* var_names,
                              const int* var_degrees, size_t var_count, const char* text,
                              epsq_series** out) {
    return guarded([&] {
        require(ring && text && out && (var_count == 0 || var_names), "bad arguments");
        *out = new epsq_series{
            epsq::parse_series(ring->ring, make_vars(var_names, var_degrees, var_count), text)};
    });
}

epsq_status epsq_series_add(const epsq_series* a, const epsq_series* b, epsq_series** out) {
    return guarded([&] {
        require(a && b && out, "bad arguments");
        *out = new epsq_series{a->s + b->s};
    });
}

epsq_status epsq_series_mul(const epsq_series* a, const epsq_series* b, epsq_series** out) {
    return guarded([&] {
        require(a && b && out, "bad arguments");
        *out = new epsq_series{a->s * b->s};
    });
}

epsq_status epsq_series_pow(const epsq_series* a, uint32_t k, epsq_series** out) {
    return guarded([&] {
        require(a && out, "bad arguments");
        *out = new epsq_series{a->s.pow(k)};
    });
}

epsq_status epsq_series_substitute(const epsq_series* f, const char* const* vars,
                                   const epsq_series* const* images, size_t count,
                                   epsq_series** out) {
    return guarded([&] {
        require(f && out && (count == 0 || (vars && images)), "bad arguments");
        std::map<std::string, epsq::MultiSeries> map;
        for (size_t i = 0; i < count; ++i) {
            require(images[i] != nullptr, "null image");
            map.emplace(vars[i], images[i]->s);
        }
        *out = new epsq_series{f->s.substitute(map)};
    });
}

epsq_status epsq_series_coefficient(const epsq_series* f, const uint32_t* exps, size_t count,
                                    char** out_text) {
    return guarded([&] {
        require(f && out_text && (count == 0 || exps), "bad arguments");
        epsq::VarExp e(exps, exps + count);
        *out_text = dup_string(f->s.coefficient(e).to_text());
    });
}

epsq_status epsq_series_frobenius_sqrt(const epsq_series* f, epsq_series** out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        *out = new epsq_series{f->s.frobenius_sqrt()};
    });
}

epsq_status epsq_series_truncate(const epsq_series* f, int degree, epsq_series** out) {
    return guarded([&] {
        require(f && out && degree >= 0, "bad arguments");
        *out = new epsq_series{f->s.truncate_to(degree)};
    });
}

epsq_status epsq_series_equal(const epsq_series* a, const epsq_series* b, int* out) {
    return guarded([&] {
        require(a && b && out, "bad arguments");
        *out = a->s.equal_values(b->s) ? 1 : 0;
    });
}

epsq_status epsq_series_text(const epsq_series* f, char** out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        *out = dup_string(f->s.to_text());
    });
}

epsq_status epsq_series_json(const epsq_series* f, char** out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        *out = dup_string(f->s.json_text());
    });
}

epsq_status epsq_fgl_check_json(const epsq_series* f, int degree, char** out_json) {
    return guarded([&] {
        require(f && out_json && degree >= 1, "bad arguments");
        epsq::FglValidation v = epsq::FormalGroupLaw::validate(f->s, degree);
        nlohmann::json j;
        j["identities"] = {{"unit", identity_json(v.unit)},
                           {"commutative", identity_json(v.commutative)},
                           {"associative", identity_json(v.associative)},
                           {"order_two", identity_json(v.order_two)}};
        j["passed"] = v.all_passed();
        j["first_failure"] = v.first_failure();
        *out_json = dup_string(j.dump());
    });
}

epsq_status epsq_fgl_new(const epsq_series* f, int degree, epsq_fgl** out) {
    return guarded([&] {
        require(f && out && degree >= 1, "bad arguments");
        *out = new epsq_fgl{epsq::FormalGroupLaw::make(f->s, degree)};
    });
}

epsq_status epsq_fgl_series(const epsq_fgl* f, epsq_series** out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        *out = new epsq_series{f->law.series()};
    });
}

epsq_status epsq_fgl_order_two(const epsq_fgl* f, int* out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        *out = f->law.order_two() ? 1 : 0;
    });
}

epsq_status epsq_fgl_json(const epsq_fgl* f, char** out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        *out = dup_string(f->law.json_text());
    });
}

epsq_status epsq_fgl_universal(int max_degree, epsq_fgl** out, char** out_fresh_json) {
    return guarded([&] {
        require(out, "bad arguments");
        epsq::UniversalResult u = epsq::universal_order_two(max_degree);
        if (out_fresh_json) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& g : u.fresh)
                j.push_back(
                    {{"name", g.name}, {"degree", g.degree}, {"i", g.i}, {"j", g.j}});
            *out_fresh_json = dup_string(j.dump());
        }
        *out = new epsq_fgl{std::move(u.law)};
    });
}

epsq_status epsq_fgl_twist(const epsq_fgl* f, int degree, epsq_twist** out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        std::optional<int> deg;
        if (degree > 0) deg = degree;
        *out = new epsq_twist{epsq::lubin_twist(f->law, deg)};
    });
}

epsq_status epsq_twist_law(const epsq_twist* t, epsq_fgl** out) {
    return guarded([&] {
        require(t && out, "bad arguments");
        *out = new epsq_fgl{t->tw.law};
    });
}

epsq_status epsq_twist_solved_degree(const epsq_twist* t, int* out) {
    return guarded([&] {
        require(t && out, "bad arguments");
        *out = t->tw.solved_degree;
    });
}

epsq_status epsq_fgl_square_compose(const epsq_fgl* f, uint32_t a, epsq_fgl** out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        *out = new epsq_fgl{epsq::square_compose(f->law, a)};
    });
}

epsq_status epsq_fgl_descend(const epsq_fgl* f, uint32_t a, epsq_fgl** out) {
    return guarded([&] {
        require(f && out, "bad arguments");
        *out = new epsq_fgl{epsq::frobenius_descend(f->law, a)};
    });
}

epsq_status epsq_fgl_is_morphism(const epsq_series* h, const char* hvar, const epsq_fgl* F,
                                 const epsq_fgl* G, int degree, int* out_ok,
                                 char** out_witness) {
    return guarded([&] {
        require(h && hvar && F && G && out_ok, "bad arguments");
        std::optional<int> deg;
        if (degree > 0) deg = degree;
        epsq::MorphismReport r = epsq::is_morphism(h->s, hvar, F->law, G->law, deg);
        *out_ok = r.ok ? 1 : 0;
        if (out_witness) *out_witness = dup_string(r.witness);
    });
}

epsq_status epsq_dring_additive(const char* const* var_names, const uint32_t* orders,
                                size_t count, int degree, epsq_dring** out) {
    return guarded([&] {
        require(out && count > 0 && var_names && orders, "bad arguments");
        epsq::RingPtr f2 = epsq::CoeffRing::f2(0);
        epsq::FormalGroupLaw add = epsq::FormalGroupLaw::additive(f2, degree);
        std::vector<std::pair<std::string, uint32_t>> vars;
        for (size_t i = 0; i < count; ++i) vars.emplace_back(var_names[i], orders[i]);
        *out = new epsq_dring{epsq::DRing::make(add, 1, vars)};
    });
}

epsq_status epsq_dring_universal(int max_degree, const char* const* var_names,
                                 const uint32_t* orders, size_t count, epsq_dring** out) {
    return guarded([&] {
        require(out && count > 0 && var_names && orders, "bad arguments");
        epsq::UniversalResult u = epsq::universal_order_two(max_degree);
        epsq::TwistResult tw = epsq::lubin_twist(u.law);
        std::vector<std::pair<std::string, uint32_t>> vars;
        for (size_t i = 0; i < count; ++i) vars.emplace_back(var_names[i], orders[i]);
        *out = new epsq_dring{epsq::DRing::make(u.law, 1, vars, &tw)};
    });
}

epsq_status epsq_dring_make(const epsq_fgl* law, int grade, const char* const* var_names,
                            const uint32_t* n, size_t count, const epsq_twist* coeff_action,
                            epsq_dring** out) {
    return guarded([&] {
        require(law && out && count > 0 && var_names && n, "bad arguments");
        std::vector<std::pair<std::string, uint32_t>> vars;
        for (size_t i = 0; i < count; ++i) vars.emplace_back(var_names[i], n[i]);
        *out = new epsq_dring{
            epsq::DRing::make(law->law, grade, vars, coeff_action ? &coeff_action->tw : nullptr)};
    });
}

epsq_status epsq_dring_apply_total(const epsq_dring* d, const char* element, char** out_text) {
    return guarded([&] {
        require(d && element && out_text, "bad arguments");
        *out_text = dup_string(d->model.apply_total(d->model.parse_element(element)).to_text());
    });
}

epsq_status epsq_dring_check_json(const epsq_dring* d, const char* axiom, uint64_t seed,
                                  char** out_json, int* out_passed) {
    return guarded([&] {
        require(d && axiom && out_json, "bad arguments");
        epsq::AxiomReport r = run_check(d->model, axiom, seed);
        *out_json = dup_string(r.json_text());
        if (out_passed) *out_passed = r.passed() ? 1 : 0;
    });
}

epsq_status epsq_dring_verify_json(const epsq_dring* d, uint64_t seed, char** out_json,
                                   int* out_passed) {
    return guarded([&] {
        require(d && out_json, "bad arguments");
        nlohmann::json j;
        j["seed"] = seed;
        j["grading_convention"] = "coefficient of x^i y^j has degree a*(1-i-j)";
        j["checks"] = nlohmann::json::array();
        bool passed = true;
        for (const char* axiom : {"D1", "D2", "D3", "hom"}) {
            epsq::AxiomReport r = run_check(d->model, axiom, seed);
            passed = passed && r.passed();
            j["checks"].push_back(report_json(r));
        }
        nlohmann::json euler = nlohmann::json::object();
        for (const auto& c : d->model.carrier()) {
            try {
                euler[c.name] = d->model.euler_total(c.name).to_text();
            } catch (const epsq::Error& e) {
                euler[c.name] = std::string("FAILED: ") + e.what();
                passed = false;
            }
        }
        j["euler"] = std::move(euler);
        j["passed"] = passed;
        *out_json = dup_string(j.dump());
        if (out_passed) *out_passed = passed ? 1 : 0;
    });
}

epsq_status epsq_dring_euler(const epsq_dring* d, const char* var, char** out_text) {
    return guarded([&] {
        require(d && var && out_text, "bad arguments");
        *out_text = dup_string(d->model.euler_total(var).to_text());
    });
}

epsq_status epsq_op_eval(const epsq_dring* d, const char* word, const char* element,
                         char** out_text) {
    return guarded([&] {
        require(d && word && element && out_text, "bad arguments");
        epsq::OpWord w = epsq::parse_opword(word);
        epsq::MultiSeries x = d->model.parse_element(element);
        *out_text = dup_string(epsq::apply_opword(d->model, w, x).to_text());
    });
}

epsq_status epsq_op_eval_json(const epsq_dring* d, const char* word, const char* element,
                              char** out_json) {
    return guarded([&] {
        require(d && word && element && out_json, "bad arguments");
        epsq::OpWord w = epsq::parse_opword(word);
        epsq::MultiSeries x = d->model.parse_element(element);
        epsq::MultiSeries y = epsq::apply_opword(d->model, w, x);
        nlohmann::json j;
        j["op"] = epsq::opword_text(w);
        j["element"] = x.to_text();
        j["result"] = y.to_text();
        j["series"] = nlohmann::json::parse(y.json_text());
        *out_json = dup_string(j.dump());
    });
}

epsq_status epsq_adem_normalize(const char* word, char** out_text) {
    return guarded([&] {
        require(word && out_text, "bad arguments");
        epsq::OpWord w = epsq::parse_opword(word);
        epsq::SqWord sq;
        for (const auto& l : w) {
            if (l.kind != epsq::OpLabel::Kind::Sq)
                epsq::fail(epsq::ErrCode::InvalidArgument, "normalization takes Sq words only");
            sq.push_back(l.index);
        }
        *out_text = dup_string(epsq::wordsum_text(epsq::adem_normalize(sq)));
    });
}

epsq_status epsq_adem_normalize_json(const char* word, char** out_json) {
    return guarded([&] {
        require(word && out_json, "bad arguments");
        epsq::OpWord w = epsq::parse_opword(word);
        epsq::SqWord sq;
        for (const auto& l : w) {
            if (l.kind != epsq::OpLabel::Kind::Sq)
                epsq::fail(epsq::ErrCode::InvalidArgument, "normalization takes Sq words only");
            sq.push_back(l.index);
        }
        *out_json = dup_string(epsq::wordsum_json(epsq::adem_normalize(sq)));
    });
}

epsq_status epsq_cartan_check_json(const epsq_dring* d, uint64_t seed, char** out_json,
                                   int* out_passed) {
    return guarded([&] {
        require(d && out_json, "bad arguments");
        // homogeneous sample pairs: carrier monomials of small degree
        auto samples = d->model.default_samples(seed, 0);
        std::vector<std::pair<epsq::MultiSeries, epsq::MultiSeries>> pairs;
        for (const auto& a : samples) {
            if (!a.homogeneous_degree()) continue;
            for (const auto& b : samples) {
                if (!b.homogeneous_degree()) continue;
                if (pairs.size() >= 64) break;
                pairs.emplace_back(a, b);
            }
        }
        epsq::AxiomReport r = epsq::cartan_check(d->model, pairs);
        *out_json = dup_string(r.json_text());
        if (out_passed) *out_passed = r.passed() ? 1 : 0;
    });
}

epsq_status epsq_cover_parse(const char* json, epsq_cover** out) {
    return guarded([&] {
        require(json && out, "bad arguments");
        *out = new epsq_cover{epsq::Covering::parse_json(json)};
    });
}

epsq_status epsq_cover_json(const epsq_cover* p, char** out) {
    return guarded([&] {
        require(p && out, "bad arguments");
        *out = dup_string(p->c.json_text());
    });
}

epsq_status epsq_cover_derivative(const epsq_cover* p, epsq_cover** out) {
    return guarded([&] {
        require(p && out, "bad arguments");
        *out = new epsq_cover{p->c.derivative()};
    });
}

epsq_status epsq_cover_sum(const epsq_cover* p, const epsq_cover* q, epsq_cover** out) {
    return guarded([&] {
        require(p && q && out, "bad arguments");
        *out = new epsq_cover{p->c.sum(q->c)};
    });
}

epsq_status epsq_cover_product(const epsq_cover* p, const epsq_cover* q, epsq_cover** out) {
    return guarded([&] {
        require(p && q && out, "bad arguments");
        *out = new epsq_cover{p->c.product(q->c)};
    });
}

epsq_status epsq_cover_compose(const epsq_cover* p, const epsq_cover* q, epsq_cover** out) {
    return guarded([&] {
        require(p && q && out, "bad arguments");
        *out = new epsq_cover{p->c.compose(q->c)};
    });
}

epsq_status epsq_cover_extended_power(const epsq_cover* p, const char* const* labels,
                                      size_t count, epsq_cover** out) {
    return guarded([&] {
        require(p && out && (count == 0 || labels), "bad arguments");
        std::vector<std::string> X;
        for (size_t i = 0; i < count; ++i) X.push_back(labels[i]);
        *out = new epsq_cover{p->c.extended_power(X)};
    });
}

epsq_status epsq_cover_iso(const epsq_cover* p, const epsq_cover* q, int* out) {
    return guarded([&] {
        require(p && q && out, "bad arguments");
        *out = p->c.iso(q->c) ? 1 : 0;
    });
}

epsq_status epsq_cover_poly_json(const epsq_cover* p, char** out) {
    return guarded([&] {
        require(p && out, "bad arguments");
        nlohmann::json j = p->c.poly();
        *out = dup_string(j.dump());
    });
}

epsq_status epsq_cover_report_json(const epsq_cover* p, const epsq_cover* q_or_null,
                                   uint64_t seed, char** out_json, int* out_passed) {
    return guarded([&] {
        require(p && out_json, "bad arguments");
        const epsq::Covering& P = p->c;
        nlohmann::json j;
        j["seed"] = seed;
        j["p"] = nlohmann::json::parse(P.json_text());
        j["p"]["poly"] = P.poly();
        bool passed = true;
        nlohmann::json checks = nlohmann::json::array();
        auto add_check = [&](const std::string& name, bool ok) {
            checks.push_back({{"name", name}, {"passed", ok}});
            passed = passed && ok;
        };

        add_check("poly_derivative", P.derivative().poly() == epsq::poly_derivative(P.poly()));
        std::vector<std::string> X{"x1", "x2"};
        // enumerative checks are skipped (not failed) when the sets would not fit
        auto bounded_eval = [](const epsq::Covering& c, long long m, long long cap) {
            long long total = 0;
            for (size_t b = 0; b < c.base().size(); ++b) {
                long long f = 1;
                for (size_t i = 0; i < c.fiber(b).size() && f <= cap; ++i) f *= m;
                total += f;
                if (total > cap) return cap + 1;
            }
            return total;
        };
        if (bounded_eval(P, 2, 100000) <= 100000)
            add_check("power_cardinality",
                      P.extended_power(X).total().size() == static_cast<size_t>(P.poly_eval(2)));
        {
            auto sizes = P.fiber_sizes_sorted();
            bool constant = !sizes.empty() && sizes.front() == sizes.back();
            if (constant && sizes.front() <= 3 && P.base().size() <= 6)
                add_check("frames_quotient", epsq::frames_quotient_check(P, X));
        }

        if (q_or_null) {
            const epsq::Covering& Q = q_or_null->c;
            j["q"] = nlohmann::json::parse(Q.json_text());
            j["q"]["poly"] = Q.poly();
            add_check("sum_rule", P.sum(Q).derivative().iso(P.derivative().sum(Q.derivative())));
            add_check("product_rule",
                      P.product(Q).derivative().iso(
                          P.derivative().product(Q).sum(P.product(Q.derivative()))));
            add_check("chain_rule", P.compose(Q).derivative().iso(
                                        P.derivative().compose(Q).product(Q.derivative())));
            add_check("poly_sum", P.sum(Q).poly() == epsq::poly_add(P.poly(), Q.poly()));
            add_check("poly_product", P.product(Q).poly() == epsq::poly_mul(P.poly(), Q.poly()));
            add_check("poly_compose",
                      P.compose(Q).poly() == epsq::poly_compose(P.poly(), Q.poly()));
            long long qx = Q.poly_eval(2);
            long long size = 1;
            for (size_t b = 0; b < P.base().size() && size <= 20000; ++b) {
                long long f = 1;
                for (size_t i = 0; i < P.fiber(b).size() && f <= 20000; ++i) f *= qx;
                size += f;
            }
            if (size <= 20000)
                add_check("compose_bijection", epsq::compose_bijection_check(P, Q, X));
        }
        j["checks"] = std::move(checks);
        j["passed"] = passed;
        *out_json = dup_string(j.dump());
        if (out_passed) *out_passed = passed ? 1 : 0;
    });
}

} // extern "C"
