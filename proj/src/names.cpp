#include "gk2dlp/names.hpp"

#include "gk2dlp/error.hpp"

namespace gk2dlp {

const char* kind_name(AtomKind k) noexcept {
    switch (k) {
    case AtomKind::Base: return "base";
    case AtomKind::KAtom: return "kAtom";
    case AtomKind::AAtom: return "aAtom";
    case AtomKind::KCopy: return "kCopy";
    case AtomKind::ACopy: return "aCopy";
    case AtomKind::KWitnessCopy: return "kWitnessCopy";
    case AtomKind::AWitnessCopy: return "aWitnessCopy";
    case AtomKind::Star: return "star";
    case AtomKind::Hat: return "hat";
    case AtomKind::Control: return "control";
    case AtomKind::CAtom: return "cAtom";
    case AtomKind::CnfDef: return "cnfDef";
    }
    return "?";
}

TranslationNamespace::TranslationNamespace(const std::vector<std::string>& base_atoms) {
    for (const auto& p : base_atoms) add_base(p);
}

void TranslationNamespace::add_base(const std::string& p) {
    if (auto it = by_name_.find(p); it != by_name_.end()) {
        if (entries_[it->second].kind != AtomKind::Base) {
            throw NamespaceError("base atom '" + p + "' collides with a generated atom");
        }
        return;
    }
    intern(AtomKind::Base, p, p, {}, 0, p);
}

const std::string& TranslationNamespace::intern(AtomKind kind, const std::string& key,
                                                const std::string& candidate, const std::string& source,
                                                std::size_t index, const std::string& text) {
    const auto k = std::make_pair(kind, key);
    if (auto it = by_key_.find(k); it != by_key_.end()) return entries_[it->second].name;
    std::string name = candidate;
    if (kind != AtomKind::Base) {
        while (by_name_.count(name) != 0) name.insert(name.begin(), '_');
    }
    const std::size_t id = entries_.size();
    entries_.push_back(AtomInfo{kind, name, source, index, text});
    by_name_.emplace(name, id);
    by_key_.emplace(k, id);
    return entries_.back().name;
}

const std::string& TranslationNamespace::k_atom(const prop::Formula& phi) {
    const std::string key = prop::to_string(phi);
    if (auto it = by_key_.find({AtomKind::KAtom, key}); it != by_key_.end()) return entries_[it->second].name;
    ++k_count_;
    return intern(AtomKind::KAtom, key, "k__" + std::to_string(k_count_), {}, k_count_, key);
}

const std::string& TranslationNamespace::a_atom(const prop::Formula& psi) {
    const std::string key = prop::to_string(psi);
    if (auto it = by_key_.find({AtomKind::AAtom, key}); it != by_key_.end()) return entries_[it->second].name;
    ++a_count_;
    return intern(AtomKind::AAtom, key, "a__" + std::to_string(a_count_), {}, a_count_, key);
}

const std::string& TranslationNamespace::c_atom(const prop::Formula& phi) {
    const std::string key = prop::to_string(phi);
    if (auto it = by_key_.find({AtomKind::CAtom, key}); it != by_key_.end()) return entries_[it->second].name;
    ++c_count_;
    return intern(AtomKind::CAtom, key, "c__" + std::to_string(c_count_), {}, c_count_, key);
}

const std::string& TranslationNamespace::k_copy(const std::string& p) {
    return intern(AtomKind::KCopy, p, "g_k__" + p, p, 0, p + "^k");
}

const std::string& TranslationNamespace::a_copy(const std::string& p) {
    return intern(AtomKind::ACopy, p, "g_a__" + p, p, 0, p + "^a");
}

const std::string& TranslationNamespace::k_witness(std::size_t k_index, const std::string& p) {
    const std::string idx = std::to_string(k_index);
    return intern(AtomKind::KWitnessCopy, idx + "|" + p, "w_k" + idx + "__" + p, p, k_index,
                  p + "^k__" + idx);
}

const std::string& TranslationNamespace::a_witness(std::size_t a_index, const std::string& p) {
    const std::string idx = std::to_string(a_index);
    return intern(AtomKind::AWitnessCopy, idx + "|" + p, "w_a" + idx + "__" + p, p, a_index,
                  p + "^a__" + idx);
}

const std::string& TranslationNamespace::star(const std::string& x) {
    return intern(AtomKind::Star, x, "s__" + x, x, 0, x + "*");
}

const std::string& TranslationNamespace::hat(const std::string& p) {
    return intern(AtomKind::Hat, p, "h__" + p, p, 0, "^" + p);
}

const std::string& TranslationNamespace::control(const std::string& which) {
    if (which != "u" && which != "v") throw NamespaceError("unknown control atom '" + which + "'");
    return intern(AtomKind::Control, which, which, {}, 0, which);
}

const std::string& TranslationNamespace::cnf_def(const std::string& defined_text) {
    ++def_count_;
    // Every call defines a fresh atom, so the counter is part of the key.
    const std::string idx = std::to_string(def_count_);
    return intern(AtomKind::CnfDef, idx, "d__" + idx, {}, def_count_, defined_text);
}

std::optional<std::size_t> TranslationNamespace::k_index(const prop::Formula& phi) const {
    auto it = by_key_.find({AtomKind::KAtom, prop::to_string(phi)});
    if (it == by_key_.end()) return std::nullopt;
    return entries_[it->second].index;
}

std::optional<std::size_t> TranslationNamespace::a_index(const prop::Formula& psi) const {
    auto it = by_key_.find({AtomKind::AAtom, prop::to_string(psi)});
    if (it == by_key_.end()) return std::nullopt;
    return entries_[it->second].index;
}

const AtomInfo* TranslationNamespace::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &entries_[it->second];
}

const AtomInfo& TranslationNamespace::info(const std::string& name) const {
    const AtomInfo* i = find(name);
    if (i == nullptr) throw NamespaceError("unregistered atom '" + name + "'");
    return *i;
}

} // namespace gk2dlp
