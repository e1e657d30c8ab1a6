#pragma once

#include "gk2dlp/formula.hpp"
#include "gk2dlp/names.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gk2dlp::prop {

struct EnumerationLimits {
    std::size_t atom_cap = 24;
};

/// Ordered, duplicate-free atom set with O(1) name lookup.
class Universe {
public:
    Universe() = default;
    explicit Universe(std::vector<std::string> atoms);

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    const std::string& operator[](std::size_t i) const { return atoms_[i]; }
    std::optional<std::size_t> index(const std::string& p) const;
    bool contains(const std::string& p) const { return index_.count(p) != 0; }

private:
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Complete literal set over a universe: each atom is either true or false.
class Interpretation {
public:
    Interpretation(std::shared_ptr<const Universe> universe, std::vector<bool> values);
    /// Literal-set form: atoms listed in `true_atoms` are true, the rest false.
    static Interpretation from_true_atoms(std::shared_ptr<const Universe> universe,
                                          const std::vector<std::string>& true_atoms);

    const Universe& universe() const noexcept { return *universe_; }
    bool value(const std::string& p) const;
    bool value(std::size_t i) const { return values_[i]; }

    /// e.g. `{p, ~q}` in universe order.
    std::string to_string() const;

    friend bool operator==(const Interpretation& a, const Interpretation& b) {
        return a.universe_->atoms() == b.universe_->atoms() && a.values_ == b.values_;
    }

private:
    std::shared_ptr<const Universe> universe_;
    std::vector<bool> values_;
};

/// Truth value of `f`; throws UniverseMismatchError for atoms outside the universe.
bool evaluate(const Interpretation& I, const Formula& f);

/// Formula compiled against a universe of at most 64 atoms, evaluated on bitmasks
/// (bit i set = atom i true). Used by the brute-force oracles.
class BitEvaluator {
public:
    BitEvaluator(const Formula& f, const Universe& universe);
    bool operator()(std::uint64_t bits) const;

private:
    struct Step {
        Op op;
        std::uint32_t a = 0;
        std::uint32_t b = 0;
    };
    std::vector<Step> code_;
};

std::vector<Interpretation> models(const Formula& f, const std::vector<std::string>& universe,
                                   const EnumerationLimits& limits = {});

bool entails(const std::vector<Formula>& gamma, const Formula& f, const EnumerationLimits& limits = {});

/// Throws EnumerationLimitError when `n` atoms exceed the cap (or 63 hard limit).
void check_enumeration_cap(std::size_t n, const EnumerationLimits& limits, const char* what);

Formula nnf(const Formula& f);
bool is_nnf(const Formula& f) noexcept;

/// Clause p_1 | ... | p_t | ~q_1 | ... | ~q_m written as rule p_1;...;p_t <- q_1,...,q_m.
struct ClauseRule {
    std::vector<std::string> head;
    std::vector<std::string> body;

    friend bool operator==(const ClauseRule&, const ClauseRule&) = default;
};

enum class CnfMode { Distributive, Structural };

const char* cnf_mode_name(CnfMode m) noexcept;

struct CnfOptions {
    /// Distributive mode aborts with EnumerationLimitError beyond this many clauses.
    std::size_t max_clauses = 2'000'000;
};

/// Clause form of `f`. Structural mode introduces definition atoms, registered in `ns`.
std::vector<ClauseRule> cnf(const Formula& f, CnfMode mode, TranslationNamespace& ns,
                            const CnfOptions& options = {});
/// Distributive clause form (no fresh atoms).
std::vector<ClauseRule> cnf(const Formula& f, const CnfOptions& options = {});

Formula clause_formula(const ClauseRule& c);
Formula clauses_formula(const std::vector<ClauseRule>& cs);

struct RenameTag {
    enum class Kind { KCopy, ACopy, KWitness, AWitness, Star, Hat };
    Kind kind;
    std::size_t index = 0; // modal-atom index for witness tags

    static RenameTag k_copy() { return {Kind::KCopy, 0}; }
    static RenameTag a_copy() { return {Kind::ACopy, 0}; }
    static RenameTag k_witness(std::size_t i) { return {Kind::KWitness, i}; }
    static RenameTag a_witness(std::size_t i) { return {Kind::AWitness, i}; }
    static RenameTag star() { return {Kind::Star, 0}; }
    static RenameTag hat() { return {Kind::Hat, 0}; }
};

/// Replaces every atom by its tagged copy, registering copies in `ns`.
/// Re-applying a tag to an atom that already carries it is a NamespaceError.
Formula rename(const Formula& f, const RenameTag& tag, TranslationNamespace& ns);

/// Renames atoms through an explicit map; atoms not in the map stay.
Formula substitute(const Formula& f, const std::unordered_map<std::string, std::string>& names);

} // namespace gk2dlp::prop
