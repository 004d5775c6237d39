// Command-line front end for the epsq shared library. All computation goes
// through the C API in epsq.h; this file only parses arguments, shuttles
// text, and formats reports.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsq.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { epsq_free_string(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

[[noreturn]] void die(epsq_status st) {
    std::cerr << "error: " << epsq_last_error() << "\n";
    std::exit(st == EPSQ_PARSE_ERROR || st == EPSQ_INVALID_ARGUMENT ? kExitUsage : kExitCheckFailed);
}

void check(epsq_status st) {
    if (st != EPSQ_OK) die(st);
}

std::string read_input(const std::string& file, const std::string& inline_text) {
    if (!inline_text.empty()) return inline_text;
    if (!file.empty() && file != "-") {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot open " << file << "\n";
            std::exit(kExitUsage);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

std::vector<std::string> identifiers(const std::string& text) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
            size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            std::string name = text.substr(start, i - start);
            bool seen = false;
            for (const auto& n : out) seen = seen || n == name;
            if (!seen) out.push_back(name);
        } else {
            ++i;
        }
    }
    return out;
}

// --gen name:deg declarations, plus degree-0 defaults for the rest
struct RingSpec {
    std::vector<std::string> names;
    std::vector<int> degrees;
    void declare(const std::string& spec) {
        auto colon = spec.rfind(':');
        if (colon == std::string::npos) {
            std::cerr << "error: --gen expects name:degree\n";
            std::exit(kExitUsage);
        }
        names.push_back(spec.substr(0, colon));
        degrees.push_back(std::stoi(spec.substr(colon + 1)));
    }
    bool has(const std::string& name) const {
        for (const auto& n : names)
            if (n == name) return true;
        return false;
    }
};

epsq_ring* build_ring(RingSpec spec, const std::string& text,
                      const std::vector<std::string>& reserved, int truncation) {
    for (const auto& id : identifiers(text)) {
        bool is_var = false;
        for (const auto& r : reserved) is_var = is_var || r == id;
        if (!is_var && !spec.has(id)) {
            spec.names.push_back(id);
            spec.degrees.push_back(0);
        }
    }
    std::vector<const char*> names;
    for (const auto& n : spec.names) names.push_back(n.c_str());
    epsq_ring* ring = nullptr;
    check(epsq_ring_new(names.data(), spec.degrees.data(), names.size(), truncation, &ring));
    return ring;
}

epsq_series* parse_xy(const epsq_ring* ring, const std::string& text) {
    const char* vars[] = {"x", "y"};
    const int degs[] = {1, 1};
    epsq_series* s = nullptr;
    epsq_status st = epsq_series_parse(ring, vars, degs, 2, text.c_str(), &s);
    if (st != EPSQ_OK) {
        std::cerr << "error: " << epsq_last_error() << "\n";
        std::exit(kExitUsage);
    }
    return s;
}

struct ModelSpec {
    size_t k = 1;
    uint32_t n = 13;
    int a = 1;
};

ModelSpec parse_model(const std::string& text) {
    ModelSpec m;
    if (text.empty()) return m;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --model expects k=..,n=..,a=..\n";
            std::exit(kExitUsage);
        }
        std::string key = item.substr(0, eq);
        long value = std::stol(item.substr(eq + 1));
        if (key == "k")
            m.k = static_cast<size_t>(value);
        else if (key == "n")
            m.n = static_cast<uint32_t>(value);
        else if (key == "a")
            m.a = static_cast<int>(value);
        else {
            std::cerr << "error: unknown model key " << key << "\n";
            std::exit(kExitUsage);
        }
    }
    if (m.k == 0 || m.n == 0 || (m.a != 1 && m.a != 2)) {
        std::cerr << "error: model needs k>=1, n>=1, a in {1,2}\n";
        std::exit(kExitUsage);
    }
    return m;
}

void print_identity_line(const nlohmann::json& id, const std::string& name) {
    if (id["passed"].get<bool>())
        std::cout << name << ": ok to degree " << id["degree"].get<int>() << "\n";
    else
        std::cout << name << " fails: " << id["witness"].get<std::string>() << "\n";
}

int cmd_fgl_check(const std::string& input, const RingSpec& gens, int trunc, bool json) {
    epsq_ring* ring = build_ring(gens, input, {"x", "y"}, 4 * trunc + 16);
    epsq_series* f = parse_xy(ring, input);
    OwnedString report;
    check(epsq_fgl_check_json(f, trunc, &report.ptr));
    auto j = nlohmann::json::parse(report.str());
    bool passed = j["passed"].get<bool>();
    if (json) {
        std::cout << report.str() << "\n";
    } else if (passed) {
        std::cout << "ok: unit, commutative, associative, order_two hold to degree " << trunc
                  << "\n";
    } else {
        std::string first = j["first_failure"].get<std::string>();
        print_identity_line(j["identities"][first], first);
    }
    epsq_series_free(f);
    epsq_ring_free(ring);
    return passed ? kExitOk : kExitCheckFailed;
}

int cmd_fgl_twist(const std::string& input, const RingSpec& gens, int trunc, bool json) {
    epsq_ring* ring = build_ring(gens, input, {"x", "y"}, 4 * trunc + 16);
    epsq_series* f = parse_xy(ring, input);
    epsq_fgl* law = nullptr;
    epsq_status st = epsq_fgl_new(f, trunc, &law);
    if (st != EPSQ_OK) die(st);
    int order_two = 0;
    check(epsq_fgl_order_two(law, &order_two));
    if (!order_two) {
        std::cerr << "error: twist requires an order-two law\n";
        return kExitCheckFailed;
    }
    epsq_twist* tw = nullptr;
    st = epsq_fgl_twist(law, trunc, &tw);
    if (st != EPSQ_OK) die(st);
    epsq_fgl* ft = nullptr;
    check(epsq_twist_law(tw, &ft));
    if (json) {
        OwnedString body;
        check(epsq_fgl_json(ft, &body.ptr));
        int solved = 0;
        check(epsq_twist_solved_degree(tw, &solved));
        auto j = nlohmann::json::parse(body.str());
        j["solved_degree"] = solved;
        std::cout << j.dump() << "\n";
    } else {
        epsq_series* s = nullptr;
        check(epsq_fgl_series(ft, &s));
        OwnedString text;
        check(epsq_series_text(s, &text.ptr));
        std::cout << text.str() << "\n";
        epsq_series_free(s);
    }
    epsq_fgl_free(ft);
    epsq_twist_free(tw);
    epsq_fgl_free(law);
    epsq_series_free(f);
    epsq_ring_free(ring);
    return kExitOk;
}

int cmd_fgl_universal(int trunc, bool json) {
    epsq_fgl* law = nullptr;
    OwnedString fresh;
    check(epsq_fgl_universal(trunc, &law, &fresh.ptr));
    epsq_series* s = nullptr;
    check(epsq_fgl_series(law, &s));
    if (json) {
        OwnedString body;
        check(epsq_fgl_json(law, &body.ptr));
        auto j = nlohmann::json::parse(body.str());
        j["fresh_generators"] = nlohmann::json::parse(fresh.str());
        j["grading_convention"] = "coefficient of x^i y^j has degree a*(1-i-j), a = 1";
        std::cout << j.dump() << "\n";
    } else {
        OwnedString text;
        check(epsq_series_text(s, &text.ptr));
        std::cout << text.str() << "\n";
        std::cout << "fresh generators: " << fresh.str() << "\n";
    }
    epsq_series_free(s);
    epsq_fgl_free(law);
    return kExitOk;
}

int cmd_dring_verify(const std::string& model_text, const std::string& law_name, int trunc,
                     uint64_t seed, bool json) {
    ModelSpec m = parse_model(model_text);
    std::vector<std::string> names;
    for (size_t i = 1; i <= m.k; ++i) names.push_back("t" + std::to_string(i));
    std::vector<const char*> cnames;
    for (const auto& n : names) cnames.push_back(n.c_str());
    std::vector<uint32_t> orders(m.k, m.n);

    epsq_dring* model = nullptr;
    if (law_name == "additive") {
        if (m.a == 1) {
            check(epsq_dring_additive(cnames.data(), orders.data(), m.k, trunc, &model));
        } else {
            epsq_ring* ring = nullptr;
            check(epsq_ring_new(nullptr, nullptr, 0, 0, &ring));
            epsq_series* f = parse_xy(ring, "x + y");
            epsq_fgl* law = nullptr;
            check(epsq_fgl_new(f, trunc, &law));
            check(epsq_dring_make(law, m.a, cnames.data(), orders.data(), m.k, nullptr, &model));
            epsq_fgl_free(law);
            epsq_series_free(f);
            epsq_ring_free(ring);
        }
    } else if (law_name == "universal") {
        if (m.a != 1) {
            std::cerr << "error: the universal model uses a=1\n";
            return kExitUsage;
        }
        check(epsq_dring_universal(trunc, cnames.data(), orders.data(), m.k, &model));
    } else {
        std::cerr << "error: --law must be additive or universal\n";
        return kExitUsage;
    }

    OwnedString report;
    int passed = 0;
    check(epsq_dring_verify_json(model, seed, &report.ptr, &passed));
    if (json) {
        std::cout << report.str() << "\n";
    } else {
        auto j = nlohmann::json::parse(report.str());
        for (const auto& c : j["checks"]) {
            std::cout << c["axiom"].get<std::string>() << ": "
                      << (c["failures"].empty() ? "ok" : "FAILED");
            int deg = c["verified_degree"].get<int>();
            if (deg < 0)
                std::cout << " (exact)";
            else
                std::cout << " (verified to degree " << deg << ")";
            std::cout << "\n";
            for (const auto& f : c["failures"])
                std::cout << "  " << f["element"].get<std::string>() << " : "
                          << f["witness_monomial"].get<std::string>() << "\n";
        }
        for (const auto& [var, val] : j["euler"].items())
            std::cout << "euler " << var << ": " << val.get<std::string>() << "\n";
        std::cout << (passed ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    epsq_dring_free(model);
    return passed ? kExitOk : kExitCheckFailed;
}

int cmd_sq_eval(const std::string& op, const std::string& elem, int trunc, uint32_t order,
                bool json) {
    std::vector<std::string> names = identifiers(elem);
    if (names.empty()) names.push_back("t");
    std::vector<const char*> cnames;
    for (const auto& n : names) cnames.push_back(n.c_str());
    std::vector<uint32_t> orders(names.size(), order ? order : 2 * trunc + 1);
    epsq_dring* model = nullptr;
    check(epsq_dring_additive(cnames.data(), orders.data(), names.size(), trunc, &model));
    OwnedString out;
    epsq_status st = json ? epsq_op_eval_json(model, op.c_str(), elem.c_str(), &out.ptr)
                          : epsq_op_eval(model, op.c_str(), elem.c_str(), &out.ptr);
    if (st != EPSQ_OK) die(st);
    std::cout << out.str() << "\n";
    epsq_dring_free(model);
    return kExitOk;
}

int cmd_adem(const std::string& op, bool json) {
    OwnedString out;
    epsq_status st = json ? epsq_adem_normalize_json(op.c_str(), &out.ptr)
                          : epsq_adem_normalize(op.c_str(), &out.ptr);
    if (st != EPSQ_OK) die(st);
    std::cout << out.str() << "\n";
    return kExitOk;
}

int cmd_cover_calc(const std::string& input, uint64_t seed, bool json) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(input);
    } catch (const std::exception& e) {
        std::cerr << "error: bad json input: " << e.what() << "\n";
        return kExitUsage;
    }
    epsq_cover* p = nullptr;
    epsq_cover* q = nullptr;
    epsq_status st;
    if (parsed.contains("p")) {
        st = epsq_cover_parse(parsed["p"].dump().c_str(), &p);
        if (st != EPSQ_OK) die(st);
        if (parsed.contains("q")) {
            st = epsq_cover_parse(parsed["q"].dump().c_str(), &q);
            if (st != EPSQ_OK) die(st);
        }
    } else {
        st = epsq_cover_parse(input.c_str(), &p);
        if (st != EPSQ_OK) die(st);
    }
    OwnedString report;
    int passed = 0;
    check(epsq_cover_report_json(p, q, seed, &report.ptr, &passed));
    if (json) {
        std::cout << report.str() << "\n";
    } else {
        auto j = nlohmann::json::parse(report.str());
        std::cout << "p poly: " << j["p"]["poly"].dump() << "\n";
        if (j.contains("q")) std::cout << "q poly: " << j["q"]["poly"].dump() << "\n";
        for (const auto& c : j["checks"])
            std::cout << c["name"].get<std::string>() << ": "
                      << (c["passed"].get<bool>() ? "ok" : "FAILED") << "\n";
        std::cout << (passed ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    if (q) epsq_cover_free(q);
    epsq_cover_free(p);
    return passed ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for order-two formal group laws, Steenrod "
                 "operations, and the finite covering calculus"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    uint64_t seed = 0;
    app.add_flag("--json", json, "emit canonical JSON instead of text");
    app.add_option("--seed", seed, "seed for sampled checks (default 0)");

    std::string file, inline_input, model_text = "k=1,n=13,a=1", law_name = "additive";
    std::string op_text, elem_text;
    std::vector<std::string> gen_specs;
    int trunc_fgl = 8, trunc_st = 12;
    uint32_t order = 0;

    auto* fgl_check = app.add_subcommand("fgl-check", "validate a bivariate law in x, y");
    fgl_check->add_option("--trunc", trunc_fgl, "working degree (default 8)");
    fgl_check->add_option("--gen", gen_specs, "declare a ring generator as name:degree")->allow_extra_args(false)->delimiter(',');
    fgl_check->add_option("--file", file, "read the series from a file ('-' for stdin)");
    fgl_check->add_option("input", inline_input, "series text");

    auto* fgl_twist = app.add_subcommand("fgl-twist", "solve for the twisted law F_t");
    fgl_twist->add_option("--trunc", trunc_fgl, "working degree (default 8)");
    fgl_twist->add_option("--gen", gen_specs, "declare a ring generator as name:degree")->allow_extra_args(false)->delimiter(',');
    fgl_twist->add_option("--file", file, "read the series from a file ('-' for stdin)");
    fgl_twist->add_option("input", inline_input, "series text");

    auto* fgl_universal =
        app.add_subcommand("fgl-universal", "construct the universal order-two law");
    fgl_universal->add_option("--trunc", trunc_fgl, "total degree (default 8)");

    auto* dring = app.add_subcommand("dring-verify", "run the total-operation axiom checks");
    dring->add_option("--model", model_text, "carrier shape k=<vars>,n=<order>,a=<1|2>");
    dring->add_option("--law", law_name, "additive or universal (default additive)");
    int dring_trunc = 6;
    dring->add_option("--trunc", dring_trunc, "law degree (default 6)");

    auto* sq = app.add_subcommand("sq-eval", "evaluate an operation word on an element");
    sq->add_option("--op", op_text, "operation word, e.g. \"Sq^1\" or \"q_0 Sq^2\"")->required();
    sq->add_option("--elem", elem_text, "element of the additive model, e.g. \"t^2\"")->required();
    sq->add_option("--trunc", trunc_st, "model degree (default 12)");
    sq->add_option("--order", order, "carrier truncation order (default 2*trunc+1)");

    auto* adem = app.add_subcommand("adem-normalize", "rewrite an Sq word in admissible form");
    adem->add_option("--op", op_text, "Sq word, e.g. \"Sq^1 Sq^2\"")->required();

    auto* cover = app.add_subcommand("cover-calc", "covering calculus battery");
    cover->add_option("--file", file, "covering json ('-' for stdin)");
    cover->add_option("input", inline_input, "covering json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    RingSpec gens;
    for (const auto& g : gen_specs) gens.declare(g);

    try {
        if (fgl_check->parsed())
            return cmd_fgl_check(read_input(file, inline_input), gens, trunc_fgl, json);
        if (fgl_twist->parsed())
            return cmd_fgl_twist(read_input(file, inline_input), gens, trunc_fgl, json);
        if (fgl_universal->parsed()) return cmd_fgl_universal(trunc_fgl, json);
        if (dring->parsed())
            return cmd_dring_verify(model_text, law_name, dring_trunc, seed, json);
        if (sq->parsed()) return cmd_sq_eval(op_text, elem_text, trunc_st, order, json);
        if (adem->parsed()) return cmd_adem(op_text, json);
        if (cover->parsed()) return cmd_cover_calc(read_input(file, inline_input), seed, json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
