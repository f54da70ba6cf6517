#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "intertwine/checks.hpp"
#include "intertwine/operators.hpp"

namespace intertwine {

enum class MoveKind { Transpose, StarToTriangle, TriangleToStar };

/// Positions are 1-based in application order (factor 1 acts first).
/// Transpose(i) swaps factors i and i+1; the star-triangle moves rewrite
/// factors i, i+1, i+2.
struct Move {
    MoveKind kind = MoveKind::Transpose;
    int position = 1;

    bool operator==(const Move&) const = default;
};

const char* move_kind_name(MoveKind k);
MoveKind move_kind_from_name(const std::string& name);  // StructureError if unknown

/// Commutation relations used by the calculus: A with A always, J_k with
/// J_l for k != l, A_kl with J_m for m outside {k, l}, and T with anything
/// on disjoint axes.
bool factors_commute(const OperatorFactor& f, const OperatorFactor& g);

/// NonCommutingError when factors i and i+1 do not commute; StructureError
/// when i is out of range.
OperatorWord transpose(const OperatorWord& w, int i);

/// StructureError when the three factors starting at i run past the word.
/// Application order J_k(c), A_kl(b), J_k(a) (written J_k(a) A_kl(b) J_k(c))
/// becomes A_kl(-a), J_k(-b), A_kl(-c). PatternError on shape mismatch,
/// ConstraintError unless a + b + c = 0 exactly.
OperatorWord star_to_triangle(const OperatorWord& w, int i);

/// Application order A_kl(x), J_k(y), A_kl(z) becomes J_k(-z), A_kl(-y),
/// J_k(-x), with k either axis of the pair. Same errors as star_to_triangle.
OperatorWord triangle_to_star(const OperatorWord& w, int i);

OperatorWord apply_move(const OperatorWord& w, const Move& m);

/// Foata normal form: factors grouped into layers of mutually commuting
/// factors, each layer sorted by (kind, axes, exponent). Two words related
/// by commuting transpositions have the same canonical form.
OperatorWord canonical_form(const OperatorWord& w);
std::string canonical_hash(const OperatorWord& w);

/// Adjacent commuting transpositions taking `from` to `to`, which must be a
/// rearrangement of the same factors. nullopt when that is impossible
/// without swapping a non-commuting pair.
std::optional<std::vector<Move>> transpositions_between(const OperatorWord& from,
                                                        const OperatorWord& to);

struct CertificateStep {
    Move move;
    std::string before_hash;
    std::string after_hash;
    OperatorWord after;
    std::optional<double> residual;       // strong: norm of the change on v
    std::optional<double> weak_residual;  // |<change on v, w>| for a second field w
};

struct Certificate {
    OperatorWord start;
    OperatorWord end;
    std::vector<CertificateStep> steps;
    nlohmann::json numeric = nullptr;  // parameters of the numeric replay, if any

    int star_triangle_count() const;
    std::vector<Move> moves() const;
};

/// Replays `moves` from `start`, recording hashes and intermediate words.
/// Throws the move's error when a precondition fails.
Certificate make_certificate(const OperatorWord& start, const std::vector<Move>& moves);

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

struct VerificationResult {
    bool accepted = false;
    int failed_step = -1;  // 0-based step index, -1 for whole-certificate failures
    std::string reason;
};

/// Independent replay: every move must satisfy its precondition, every
/// stored hash and word must match the replayed one, and the last word must
/// equal `end` (and `expected_end` when given).
VerificationResult verify_certificate(const Certificate& c,
                                      const OperatorWord* expected_end = nullptr);

struct SearchResult {
    bool found = false;
    int depth = 0;               // star-triangle moves used, or the exhausted limit
    std::size_t explored = 0;    // canonical words visited
    std::optional<Certificate> certificate;
};

/// Breadth-first search over star-triangle moves between canonical forms;
/// transpositions are free and made explicit in the returned certificate.
/// depth_limit bounds the number of star-triangle moves.
SearchResult search_derivation(const OperatorWord& from, const OperatorWord& to, int depth_limit);

/// Built-in move list taking yang_baxter_lhs() to yang_baxter_rhs().
const std::vector<Move>& yang_baxter_script();

/// Replays the built-in script; aborts the process if the replay fails.
Certificate yang_baxter_derivation();

/// Evaluates every intermediate word on default test fields of T^3 and
/// stores ||W_i v - W_{i-1} v|| / ||v|| and |<W_i v - W_{i-1} v, w>| /
/// (||v|| ||w||) (max over trials) on each step.
void attach_numeric_residuals(Certificate& c, const ParameterPoint& point, int N, int trials,
                              std::uint64_t seed);

}  // namespace intertwine
