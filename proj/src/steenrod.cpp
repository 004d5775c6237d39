#include "steenrod.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace epsq {

OpWord parse_opword(const std::string& text) {
    OpWord out;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    while (i < text.size()) {
        OpLabel label;
        if (text.compare(i, 2, "Sq") == 0) {
            label.kind = OpLabel::Kind::Sq;
            i += 2;
            if (i >= text.size() || text[i] != '^') fail(ErrCode::Parse, "expected '^' after Sq");
        } else if (text[i] == 'q') {
            label.kind = OpLabel::Kind::Q;
            i += 1;
            if (i >= text.size() || text[i] != '_') fail(ErrCode::Parse, "expected '_' after q");
        } else {
            fail(ErrCode::Parse, "expected Sq^j or q_i at position " + std::to_string(i));
        }
        ++i; // separator
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            fail(ErrCode::Parse, "expected index at position " + std::to_string(i));
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            if (v > 1'000'000) fail(ErrCode::Parse, "operation index too large");
            ++i;
        }
        label.index = v;
        out.push_back(label);
        skip();
    }
    return out;
}

std::string opword_text(const OpWord& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        if (w[i].kind == OpLabel::Kind::Sq)
            os << "Sq^" << w[i].index;
        else
            os << "q_" << w[i].index;
    }
    return os.str();
}

std::string sq_word_text(const SqWord& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        os << "Sq^" << w[i];
    }
    return os.str();
}

std::string wordsum_text(const WordSum& s) {
    if (s.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& w : s) {
        if (!first) os << " + ";
        first = false;
        os << (w.empty() ? "1" : sq_word_text(w));
    }
    return os.str();
}

std::string wordsum_json(const WordSum& s) {
    nlohmann::json j;
    j["words"] = nlohmann::json::array();
    for (const auto& w : s) j["words"].push_back(w);
    return j.dump();
}

MultiSeries q_op(const DRing& model, uint32_t i, const MultiSeries& x) {
    if (x.is_zero()) return x;
    auto degree = x.homogeneous_degree();
    if (!degree) fail(ErrCode::NonHomogeneous, "q_i needs a homogeneous element: " + x.to_text());
    MultiSeries total = model.apply_total(x);
    if (model.additive() &&
        total.max_exponent("u") > static_cast<uint32_t>(std::max<long>(*degree, 0)))
        fail(ErrCode::Internal, "total operation exceeded the expected u-degree");
    return total.coefficient_of("u", i);
}

MultiSeries sq_op(const DRing& model, int j, const MultiSeries& x) {
    if (!model.law().is_additive())
        fail(ErrCode::NonAdditiveModel, "Sq is defined on additive-law models only");
    if (x.is_zero()) return x;
    auto degree = x.homogeneous_degree();
    if (!degree) fail(ErrCode::NonHomogeneous, "Sq^j needs a homogeneous element: " + x.to_text());
    long n = *degree;
    if (j < 0 || j > n) return MultiSeries::zero(x.ring(), x.vars(), kExactTrunc);
    return q_op(model, static_cast<uint32_t>(n - j), x);
}

MultiSeries apply_opword(const DRing& model, const OpWord& w, const MultiSeries& x) {
    MultiSeries acc = x;
    for (size_t i = w.size(); i-- > 0;) {
        if (w[i].kind == OpLabel::Kind::Sq)
            acc = sq_op(model, w[i].index, acc);
        else
            acc = q_op(model, static_cast<uint32_t>(w[i].index), acc);
    }
    return acc;
}

MultiSeries apply_sq_word(const DRing& model, const SqWord& w, const MultiSeries& x) {
    MultiSeries acc = x;
    for (size_t i = w.size(); i-- > 0;) acc = sq_op(model, w[i], acc);
    return acc;
}

MultiSeries apply_wordsum(const DRing& model, const WordSum& s, const MultiSeries& x) {
    MultiSeries acc = MultiSeries::zero(x.ring(), x.vars(), kExactTrunc);
    for (const auto& w : s) acc = acc + apply_sq_word(model, w, x);
    return acc;
}

AxiomReport cartan_check(const DRing& model,
                         const std::vector<std::pair<MultiSeries, MultiSeries>>& pairs) {
    AxiomReport rep;
    rep.axiom = "cartan";
    rep.verified_degree = -1;
    for (const auto& [x, y] : pairs) {
        if (x.is_zero() || y.is_zero()) continue;
        auto dx = x.homogeneous_degree();
        auto dy = y.homogeneous_degree();
        if (!dx || !dy) fail(ErrCode::NonHomogeneous, "cartan check needs homogeneous samples");
        MultiSeries xy = model.reduce(x.mul_to(y, kExactTrunc));
        long total = *dx + *dy;
        for (long k = 0; k <= total; ++k) {
            MultiSeries lhs =
                xy.is_zero() ? xy : sq_op(model, static_cast<int>(k), xy);
            MultiSeries rhs = MultiSeries::zero(model.ring(), x.vars(), kExactTrunc);
            for (long i = 0; i <= k; ++i) {
                MultiSeries si = sq_op(model, static_cast<int>(i), x);
                if (si.is_zero()) continue;
                MultiSeries sj = sq_op(model, static_cast<int>(k - i), y);
                if (sj.is_zero()) continue;
                rhs = rhs + model.reduce(si.mul_to(sj, kExactTrunc));
            }
            auto diff = lhs.first_difference(rhs);
            if (diff)
                rep.failures.push_back({x.to_text() + " | " + y.to_text(),
                                        "Sq^" + std::to_string(k) + " at " +
                                            (lhs + rhs).term_text(*diff)});
        }
    }
    return rep;
}

bool is_admissible(const SqWord& w) {
    for (int v : w)
        if (v < 1) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] < 2 * w[i + 1]) return false;
    return true;
}

bool binomial_odd(uint64_t n, uint64_t k) {
    if (k > n) return false;
    return (n & k) == k;
}

namespace {

void xor_into(WordSum& acc, const WordSum& other) {
    for (const auto& w : other) {
        auto it = acc.find(w);
        if (it == acc.end())
            acc.insert(w);
        else
            acc.erase(it);
    }
}

WordSum normalize_rec(const SqWord& w, std::map<SqWord, WordSum>& memo) {
    SqWord word;
    for (int v : w) {
        if (v < 0) fail(ErrCode::InvalidArgument, "negative operation index");
        if (v > 0) word.push_back(v); // Sq^0 is the identity
    }
    auto hit = memo.find(word);
    if (hit != memo.end()) return hit->second;

    // leftmost inadmissible adjacent pair
    size_t pos = word.size();
    for (size_t i = 0; i + 1 < word.size(); ++i) {
        if (word[i] < 2 * word[i + 1]) {
            pos = i;
            break;
        }
    }
    WordSum result;
    if (pos == word.size()) {
        result.insert(word);
    } else {
        int a = word[pos], b = word[pos + 1];
        for (int c = 0; 2 * c <= a; ++c) {
            if (!binomial_odd(static_cast<uint64_t>(b - c - 1), static_cast<uint64_t>(a - 2 * c)))
                continue;
            SqWord next(word.begin(), word.begin() + static_cast<long>(pos));
            next.push_back(a + b - c);
            if (c > 0) next.push_back(c);
            next.insert(next.end(), word.begin() + static_cast<long>(pos) + 2, word.end());
            xor_into(result, normalize_rec(next, memo));
        }
    }
    memo.emplace(std::move(word), result);
    return result;
}

} // namespace

WordSum adem_normalize(const SqWord& w) {
    std::map<SqWord, WordSum> memo;
    return normalize_rec(w, memo);
}

} // namespace epsq
