#include "intertwine/rewrite.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

#include "intertwine/errors.hpp"

namespace intertwine {

namespace {

Exponent negate(const Exponent& e) {
    if (const auto* le = std::get_if<LinExpr>(&e)) return -*le;
    return -std::get<Complex>(e);
}

// Exact for symbolic exponents; numeric ones are accepted within 1e-12.
void require_zero_sum(const Exponent& a, const Exponent& b, const Exponent& c) {
    const auto* la = std::get_if<LinExpr>(&a);
    const auto* lb = std::get_if<LinExpr>(&b);
    const auto* lc = std::get_if<LinExpr>(&c);
    if (la && lb && lc) {
        const LinExpr s = *la + *lb + *lc;
        if (!s.is_zero()) {
            throw ConstraintError("star-triangle exponents sum to " + s.to_string() + ", not 0");
        }
        return;
    }
    if (la || lb || lc) throw ConstraintError("star-triangle move mixes symbolic and numeric exponents");
    const Complex s = std::get<Complex>(a) + std::get<Complex>(b) + std::get<Complex>(c);
    if (std::abs(s) > 1e-12) throw ConstraintError("star-triangle exponents do not sum to 0");
}

void check_window(const OperatorWord& w, int i, int width) {
    if (i < 1 || i + width - 1 > static_cast<int>(w.size())) {
        throw StructureError("move position " + std::to_string(i) + " outside the word");
    }
}

bool in_pair(int axis, const OperatorFactor& a) {
    return a.kind == FactorKind::A && (a.axis_k == axis || a.axis_l == axis);
}

// X(x), Y(y), X(z) -> Y(-z), X(-y), Y(-x) in application order.
OperatorWord replace_triple(const OperatorWord& w, int i) {
    const auto& x = w.factors[i - 1];
    const auto& y = w.factors[i];
    const auto& z = w.factors[i + 1];
    require_zero_sum(x.exponent, y.exponent, z.exponent);
    OperatorWord out = w;
    OperatorFactor a = y;
    a.exponent = negate(z.exponent);
    OperatorFactor b = x;
    b.exponent = negate(y.exponent);
    OperatorFactor c = y;
    c.exponent = negate(x.exponent);
    out.factors[i - 1] = a;
    out.factors[i] = b;
    out.factors[i + 1] = c;
    return out;
}

std::string factor_key(const OperatorFactor& f) { return factor_to_json(f).dump(); }

std::string word_key(const OperatorWord& w) { return word_to_json(w).dump(); }

struct TripleMove {
    OperatorWord arranged;  // rearrangement with the triple adjacent
    Move move;
    OperatorWord result;
};

bool depends(const OperatorWord& w, int x, int y) { return !factors_commute(w.factors[x], w.factors[y]); }

// Rearranges w so that positions i < j < k (0-based) become adjacent, if the
// factors between them can be moved out of the way by commuting swaps.
// Returns the new word and the 0-based start of the triple in it.
std::optional<std::pair<OperatorWord, int>> make_adjacent(const OperatorWord& w, int i, int j, int k) {
    std::set<int> after{i};
    for (int m = i + 1; m <= k; ++m) {
        for (int x : after) {
            if (x < m && depends(w, x, m)) {
                after.insert(m);
                break;
            }
        }
    }
    std::set<int> before{k};
    for (int m = k - 1; m >= i; --m) {
        for (int x : before) {
            if (x > m && depends(w, m, x)) {
                before.insert(m);
                break;
            }
        }
    }
    std::vector<int> order;
    std::vector<int> pushed_back;
    for (int m = 0; m < i; ++m) order.push_back(m);
    for (int m = i + 1; m < k; ++m) {
        if (m == j) continue;
        if (after.count(m) && before.count(m)) return std::nullopt;
        if (after.count(m)) {
            pushed_back.push_back(m);
        } else {
            order.push_back(m);
        }
    }
    const int start = static_cast<int>(order.size());
    order.insert(order.end(), {i, j, k});
    order.insert(order.end(), pushed_back.begin(), pushed_back.end());
    for (int m = k + 1; m < static_cast<int>(w.size()); ++m) order.push_back(m);
    OperatorWord out;
    for (int m : order) out.factors.push_back(w.factors[m]);
    return std::make_pair(out, start);
}

bool triple_pattern(const OperatorFactor& a, const OperatorFactor& b, const OperatorFactor& c) {
    if (a.kind == FactorKind::T || b.kind == FactorKind::T) return false;
    if (!(a.kind == c.kind && a.kind != b.kind && a.axes() == c.axes())) return false;
    if (a.kind == FactorKind::J) return in_pair(a.axis_k, b);
    return in_pair(b.axis_k, a);
}

std::vector<TripleMove> star_triangle_moves(const OperatorWord& w) {
    std::vector<TripleMove> out;
    const int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const auto& a = w.factors[i];
                const auto& b = w.factors[j];
                const auto& c = w.factors[k];
                if (!triple_pattern(a, b, c)) continue;
                const auto arranged = make_adjacent(w, i, j, k);
                if (!arranged) continue;
                const Move mv{a.kind == FactorKind::J ? MoveKind::StarToTriangle : MoveKind::TriangleToStar,
                              arranged->second + 1};
                try {
                    out.push_back({arranged->first, mv, apply_move(arranged->first, mv)});
                } catch (const ConstraintError&) {
                }
            }
        }
    }
    return out;
}

}  // namespace

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::Transpose: return "transpose";
        case MoveKind::StarToTriangle: return "star_to_triangle";
        case MoveKind::TriangleToStar: return "triangle_to_star";
    }
    return "unknown";
}

MoveKind move_kind_from_name(const std::string& name) {
    if (name == "transpose") return MoveKind::Transpose;
    if (name == "star_to_triangle") return MoveKind::StarToTriangle;
    if (name == "triangle_to_star") return MoveKind::TriangleToStar;
    throw StructureError("unknown move kind '" + name + "'");
}

bool factors_commute(const OperatorFactor& f, const OperatorFactor& g) {
    if (f.kind == FactorKind::A && g.kind == FactorKind::A) return true;
    if (f.kind == FactorKind::J && g.kind == FactorKind::J) return f.axis_k != g.axis_k;
    return !f.shares_axis(g);
}

OperatorWord transpose(const OperatorWord& w, int i) {
    if (i < 1 || i + 1 > static_cast<int>(w.size())) {
        throw StructureError("transpose position " + std::to_string(i) + " outside the word");
    }
    const auto& a = w.factors[i - 1];
    const auto& b = w.factors[i];
    if (!factors_commute(a, b)) {
        throw NonCommutingError("factors " + std::to_string(i) + " (" + a.label() + ") and " +
                                std::to_string(i + 1) + " (" + b.label() + ") do not commute");
    }
    OperatorWord out = w;
    std::swap(out.factors[i - 1], out.factors[i]);
    return out;
}

OperatorWord star_to_triangle(const OperatorWord& w, int i) {
    check_window(w, i, 3);
    const auto& a = w.factors[i - 1];
    const auto& b = w.factors[i];
    const auto& c = w.factors[i + 1];
    if (!(a.kind == FactorKind::J && c.kind == FactorKind::J && b.kind == FactorKind::A &&
          a.axis_k == c.axis_k && in_pair(a.axis_k, b))) {
        throw PatternError("factors " + std::to_string(i) + ".." + std::to_string(i + 2) +
                           " are not J_k, A_kl, J_k");
    }
    return replace_triple(w, i);
}

OperatorWord triangle_to_star(const OperatorWord& w, int i) {
    check_window(w, i, 3);
    const auto& a = w.factors[i - 1];
    const auto& b = w.factors[i];
    const auto& c = w.factors[i + 1];
    if (!(a.kind == FactorKind::A && c.kind == FactorKind::A && b.kind == FactorKind::J &&
          a.axes() == c.axes() && in_pair(b.axis_k, a))) {
        throw PatternError("factors " + std::to_string(i) + ".." + std::to_string(i + 2) +
                           " are not A_kl, J_k, A_kl");
    }
    return replace_triple(w, i);
}

OperatorWord apply_move(const OperatorWord& w, const Move& m) {
    switch (m.kind) {
        case MoveKind::Transpose: return transpose(w, m.position);
        case MoveKind::StarToTriangle: return star_to_triangle(w, m.position);
        case MoveKind::TriangleToStar: return triangle_to_star(w, m.position);
    }
    throw StructureError("unknown move kind");
}

OperatorWord canonical_form(const OperatorWord& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> layer(n, 0);
    int top = 0;
    for (int i = 0; i < n; ++i) {
        int m = 0;
        for (int j = 0; j < i; ++j) {
            if (!factors_commute(w.factors[i], w.factors[j])) m = std::max(m, layer[j]);
        }
        layer[i] = m + 1;
        top = std::max(top, layer[i]);
    }
    OperatorWord out;
    for (int l = 1; l <= top; ++l) {
        std::vector<std::pair<std::string, int>> members;
        for (int i = 0; i < n; ++i) {
            if (layer[i] == l) members.emplace_back(factor_key(w.factors[i]), i);
        }
        std::sort(members.begin(), members.end());
        for (const auto& [key, i] : members) out.factors.push_back(w.factors[i]);
    }
    return out;
}

std::string canonical_hash(const OperatorWord& w) { return word_hash(canonical_form(w)); }

std::optional<std::vector<Move>> transpositions_between(const OperatorWord& from,
                                                        const OperatorWord& to) {
    const std::size_t n = from.size();
    if (to.size() != n) return std::nullopt;
    // target[t] = index in `from` of the factor that ends at position t
    std::vector<int> target(n);
    std::vector<bool> used(n, false);
    for (std::size_t t = 0; t < n; ++t) {
        bool found = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (!used[s] && from.factors[s] == to.factors[t]) {
                used[s] = true;
                target[t] = static_cast<int>(s);
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    std::vector<int> cur(n);
    for (std::size_t s = 0; s < n; ++s) cur[s] = static_cast<int>(s);
    std::vector<Move> moves;
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t p = t;
        while (cur[p] != target[t]) ++p;
        for (std::size_t s = p; s > t; --s) {
            if (!factors_commute(from.factors[cur[s - 1]], from.factors[cur[s]])) return std::nullopt;
            std::swap(cur[s - 1], cur[s]);
            moves.push_back({MoveKind::Transpose, static_cast<int>(s)});
        }
    }
    return moves;
}

int Certificate::star_triangle_count() const {
    return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const CertificateStep& s) {
        return s.move.kind != MoveKind::Transpose;
    }));
}

std::vector<Move> Certificate::moves() const {
    std::vector<Move> out;
    for (const auto& s : steps) out.push_back(s.move);
    return out;
}

Certificate make_certificate(const OperatorWord& start, const std::vector<Move>& moves) {
    Certificate c;
    c.start = start;
    OperatorWord cur = start;
    for (const auto& m : moves) {
        CertificateStep step;
        step.move = m;
        step.before_hash = word_hash(cur);
        cur = apply_move(cur, m);
        step.after_hash = word_hash(cur);
        step.after = cur;
        c.steps.push_back(std::move(step));
    }
    c.end = cur;
    return c;
}

nlohmann::json certificate_to_json(const Certificate& c) {
    nlohmann::json j;
    j["format"] = "intertwine.certificate";
    j["version"] = 1;
    j["start"] = word_to_json(c.start);
    j["end"] = word_to_json(c.end);
    j["start_hash"] = word_hash(c.start);
    j["end_hash"] = word_hash(c.end);
    j["star_triangle_moves"] = c.star_triangle_count();
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : c.steps) {
        steps.push_back({{"move", move_kind_name(s.move.kind)},
                         {"position", s.move.position},
                         {"before", s.before_hash},
                         {"after", s.after_hash},
                         {"word", word_to_json(s.after)},
                         {"residual", s.residual ? nlohmann::json(*s.residual) : nlohmann::json(nullptr)},
                         {"weak_residual",
                          s.weak_residual ? nlohmann::json(*s.weak_residual) : nlohmann::json(nullptr)}});
    }
    j["steps"] = steps;
    j["numeric"] = c.numeric;
    return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "intertwine.certificate") {
            throw StructureError("not a certificate document");
        }
        if (j.at("version").get<int>() != 1) throw StructureError("unsupported certificate version");
        Certificate c;
        c.start = word_from_json(j.at("start"));
        c.end = word_from_json(j.at("end"));
        for (const auto& s : j.at("steps")) {
            CertificateStep step;
            step.move = {move_kind_from_name(s.at("move").get<std::string>()), s.at("position").get<int>()};
            step.before_hash = s.at("before").get<std::string>();
            step.after_hash = s.at("after").get<std::string>();
            step.after = word_from_json(s.at("word"));
            if (!s.at("residual").is_null()) step.residual = s.at("residual").get<double>();
            const auto weak = s.value("weak_residual", nlohmann::json(nullptr));
            if (!weak.is_null()) step.weak_residual = weak.get<double>();
            c.steps.push_back(std::move(step));
        }
        c.numeric = j.value("numeric", nlohmann::json(nullptr));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw StructureError(std::string("certificate: ") + e.what());
    }
}

VerificationResult verify_certificate(const Certificate& c, const OperatorWord* expected_end) {
    VerificationResult res;
    OperatorWord cur = c.start;
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const auto& s = c.steps[i];
        res.failed_step = static_cast<int>(i);
        if (s.before_hash != word_hash(cur)) {
            res.reason = "stored hash before the move does not match the replayed word";
            return res;
        }
        try {
            cur = apply_move(cur, s.move);
        } catch (const Error& e) {
            res.reason = std::string(e.kind()) + ": " + e.what();
            return res;
        }
        if (!(cur == s.after) || s.after_hash != word_hash(cur)) {
            res.reason = "stored word after the move does not match the replayed word";
            return res;
        }
    }
    res.failed_step = -1;
    if (!(cur == c.end)) {
        res.reason = "replay does not end at the stated end word";
        return res;
    }
    if (expected_end && !(cur == *expected_end)) {
        res.reason = "end word differs from the expected word";
        return res;
    }
    res.accepted = true;
    return res;
}

SearchResult search_derivation(const OperatorWord& from, const OperatorWord& to, int depth_limit) {
    SearchResult res;
    const std::string goal = word_key(canonical_form(to));
    struct Node {
        std::string parent;
        OperatorWord arranged;
        Move move;
        OperatorWord word;
        int depth;
    };
    std::map<std::string, Node> seen;
    const std::string root = word_key(canonical_form(from));
    seen[root] = {"", {}, {}, from, 0};
    std::deque<std::string> queue{root};
    bool found = root == goal;
    while (!found && !queue.empty()) {
        const std::string key = queue.front();
        queue.pop_front();
        const Node node = seen.at(key);
        if (node.depth >= depth_limit) continue;
        for (auto& tm : star_triangle_moves(canonical_form(node.word))) {
            const std::string k = word_key(canonical_form(tm.result));
            if (seen.count(k)) continue;
            seen[k] = {key, tm.arranged, tm.move, tm.result, node.depth + 1};
            if (k == goal) {
                found = true;
                break;
            }
            queue.push_back(k);
        }
    }
    res.explored = seen.size();
    if (!found) {
        res.depth = depth_limit;
        return res;
    }
    std::vector<const Node*> path;
    for (std::string k = goal; !seen.at(k).parent.empty(); k = seen.at(k).parent) path.push_back(&seen.at(k));
    std::reverse(path.begin(), path.end());
    std::vector<Move> moves;
    OperatorWord cur = from;
    auto append_swaps = [&](const OperatorWord& target) {
        const auto swaps = transpositions_between(cur, target);
        if (!swaps) throw StructureError("search_derivation: internal rearrangement failed");
        moves.insert(moves.end(), swaps->begin(), swaps->end());
    };
    for (const Node* n : path) {
        append_swaps(n->arranged);
        moves.push_back(n->move);
        cur = n->word;
    }
    append_swaps(to);
    res.found = true;
    res.depth = static_cast<int>(path.size());
    res.certificate = make_certificate(from, moves);
    return res;
}

const std::vector<Move>& yang_baxter_script() {
    using K = MoveKind;
    static const std::vector<Move> script = {
#include "yang_baxter_script.inc"
    };
    return script;
}

Certificate yang_baxter_derivation() {
    Certificate c;
    try {
        c = make_certificate(yang_baxter_lhs(), yang_baxter_script());
    } catch (const Error& e) {
        std::fprintf(stderr, "built-in derivation failed to replay: %s\n", e.what());
        std::abort();
    }
    if (!(c.end == yang_baxter_rhs()) || c.star_triangle_count() != 8) {
        std::fprintf(stderr, "built-in derivation does not reach the right-hand side\n");
        std::abort();
    }
    return c;
}

void attach_numeric_residuals(Certificate& c, const ParameterPoint& point, int N, int trials,
                              std::uint64_t seed) {
    point.validate();
    if (N < 1 || trials < 1) throw DomainError("numeric replay needs N >= 1 and trials >= 1");
    const SymbolValues values = point.values();
    const int m = std::max(1, c.start.max_axis());
    std::vector<double> worst(c.steps.size(), 0.0);
    std::vector<double> worst_weak(c.steps.size(), 0.0);
    for (int t = 0; t < trials; ++t) {
        const SpectralField v = default_test_field(m, N, derive_seed(seed, 2 * t));
        const SpectralField w = default_test_field(m, N, derive_seed(seed, 2 * t + 1));
        // partial[i] = first i factors of the current word applied to v
        OperatorWord prev = c.start;
        std::vector<SpectralField> partial{v};
        for (const auto& f : prev.factors) partial.push_back(apply_factor(f, partial.back(), &values));
        for (std::size_t s = 0; s < c.steps.size(); ++s) {
            const OperatorWord& next = c.steps[s].after;
            std::size_t same = 0;
            while (same < prev.size() && same < next.size() && prev.factors[same] == next.factors[same]) ++same;
            const SpectralField old_out = partial.back();
            partial.resize(same + 1, v);
            for (std::size_t i = same; i < next.size(); ++i) {
                partial.push_back(apply_factor(next.factors[i], partial.back(), &values));
            }
            const SpectralField change = partial.back() - old_out;
            worst[s] = std::max(worst[s], change.norm() / v.norm());
            worst_weak[s] = std::max(worst_weak[s], std::abs(inner_product(change, w)) / (v.norm() * w.norm()));
            prev = next;
        }
    }
    for (std::size_t s = 0; s < c.steps.size(); ++s) {
        c.steps[s].residual = worst[s];
        c.steps[s].weak_residual = worst_weak[s];
    }
    c.numeric = {{"N", N},
                 {"trials", trials},
                 {"seed", seed},
                 {"params",
                  {{"p", {point.p.real(), point.p.imag()}},
                   {"q", {point.q.real(), point.q.imag()}},
                   {"r", {point.r.real(), point.r.imag()}},
                   {"theta", {point.theta.real(), point.theta.imag()}},
                   {"tau", {point.tau.real(), point.tau.imag()}}}}};
}

}  // namespace intertwine
