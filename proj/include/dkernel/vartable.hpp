#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace dk {

// An immutable list of named variables.  A variable is either a coordinate ("main")
// variable or a formal parameter; parameters act as scalars (derivations kill them,
// maps fix them) but participate in polynomial arithmetic like any variable.
//
// Tables grow only by extension: extended() returns a new table whose first size()
// entries coincide with this one, so polynomials over the old table remain valid over
// the new one (same variable ids).
class VarTable {
public:
    struct Entry {
        std::string name;
        bool parameter = false;
    };

    static std::shared_ptr<const VarTable> make(std::vector<Entry> entries) {
        auto t = std::shared_ptr<VarTable>(new VarTable);
        for (auto& e : entries) t->append(std::move(e));
        return t;
    }

    std::shared_ptr<const VarTable> extended(std::vector<Entry> entries) const {
        auto t = std::shared_ptr<VarTable>(new VarTable);
        t->entries_ = entries_;
        t->index_ = index_;
        for (auto& e : entries) t->append(std::move(e));
        return t;
    }

    int size() const { return static_cast<int>(entries_.size()); }
    const std::string& name(int v) const { return entries_.at(v).name; }
    bool is_parameter(int v) const { return entries_.at(v).parameter; }

    std::optional<int> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int require(const std::string& name) const {
        auto v = find(name);
        if (!v) throw DomainError("unknown variable '" + name + "'");
        return *v;
    }

    // True when `sub` is a prefix of this table; polys over `sub` transport verbatim.
    bool extends(const VarTable& sub) const {
        if (sub.size() > size()) return false;
        for (int v = 0; v < sub.size(); ++v)
            if (entries_[v].name != sub.entries_[v].name ||
                entries_[v].parameter != sub.entries_[v].parameter)
                return false;
        return true;
    }

private:
    VarTable() = default;

    void append(Entry e) {
        if (e.name.empty()) throw DomainError("empty variable name");
        if (index_.count(e.name)) throw DomainError("duplicate variable '" + e.name + "'");
        index_[e.name] = static_cast<int>(entries_.size());
        entries_.push_back(std::move(e));
    }

    std::vector<Entry> entries_;
    std::map<std::string, int> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

} // namespace dk
