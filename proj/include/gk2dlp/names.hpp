#pragma once

#include "gk2dlp/formula.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace gk2dlp {

enum class AtomKind {
    Base,
    KAtom,
    AAtom,
    KCopy,
    ACopy,
    KWitnessCopy,
    AWitnessCopy,
    Star,
    Hat,
    Control,
    CAtom,
    CnfDef,
};

const char* kind_name(AtomKind k) noexcept;

struct AtomInfo {
    AtomKind kind = AtomKind::Base;
    std::string name;
    /// Atom this one renames (Copy/Witness/Star/Hat), else empty.
    std::string source;
    /// 1-based modal-atom index for KAtom/AAtom/CAtom/witness copies, def counter for CnfDef.
    std::size_t index = 0;
    /// Human-readable meaning, used for the map file.
    std::string text;
};

/// Bijective registry of every atom name used by one translation.
///
/// Base atoms keep their input names. Generated names follow
/// `k__<i>`, `a__<i>`, `g_k__<p>`, `g_a__<p>`, `w_k<i>__<p>`, `w_a<i>__<p>`,
/// `s__<x>`, `h__<p>`, `c__<i>`, `d__<i>`, `u`, `v`; a candidate that is
/// already taken gets `_` prepended until it is free.
class TranslationNamespace {
public:
    TranslationNamespace() = default;
    explicit TranslationNamespace(const std::vector<std::string>& base_atoms);

    void add_base(const std::string& p);

    /// Registers (or looks up) the k-atom of `phi`; indices follow first registration.
    const std::string& k_atom(const prop::Formula& phi);
    const std::string& a_atom(const prop::Formula& psi);
    const std::string& c_atom(const prop::Formula& phi);
    const std::string& k_copy(const std::string& p);
    const std::string& a_copy(const std::string& p);
    const std::string& k_witness(std::size_t k_index, const std::string& p);
    const std::string& a_witness(std::size_t a_index, const std::string& p);
    const std::string& star(const std::string& x);
    const std::string& hat(const std::string& p);
    const std::string& control(const std::string& which); // "u" or "v"
    const std::string& cnf_def(const std::string& defined_text);

    std::optional<std::size_t> k_index(const prop::Formula& phi) const;
    std::optional<std::size_t> a_index(const prop::Formula& psi) const;

    bool contains(const std::string& name) const { return by_name_.count(name) != 0; }
    const AtomInfo& info(const std::string& name) const;
    const AtomInfo* find(const std::string& name) const;

    /// All atoms in registration order.
    const std::vector<AtomInfo>& entries() const noexcept { return entries_; }

private:
    const std::string& intern(AtomKind kind, const std::string& key, const std::string& candidate,
                              const std::string& source, std::size_t index, const std::string& text);

    std::vector<AtomInfo> entries_;
    std::unordered_map<std::string, std::size_t> by_name_;
    std::map<std::pair<AtomKind, std::string>, std::size_t> by_key_;
    std::size_t k_count_ = 0;
    std::size_t a_count_ = 0;
    std::size_t c_count_ = 0;
    std::size_t def_count_ = 0;
};

} // namespace gk2dlp
