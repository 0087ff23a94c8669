#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace dk {

struct CheckResult {
    bool ok = true;
    std::string certificate; // names the first failing generator/relation when !ok

    static CheckResult pass() { return {true, ""}; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

// Algebra map over the parameter scalars: main variables of the source get explicit
// images, parameters map to the target's same-named parameter.  Well-definedness
// (relations land in the target's relation ideal) is a separate, reportable check;
// construction can skip it deliberately (e.g. to exercise failing axioms).
class AlgebraMap {
public:
    AlgebraMap() = default;

    static AlgebraMap make(AlgebraPtr source, AlgebraPtr target,
                           std::map<int, AlgebraElement> images, bool check = true) {
        AlgebraMap f;
        f.source_ = std::move(source);
        f.target_ = std::move(target);
        f.images_ = std::move(images);
        for (int v : f.source_->main_vars())
            if (!f.images_.count(v))
                throw DomainError("no image for generator '" + f.source_->table()->name(v) + "'");
        for (auto& [v, img] : f.images_)
            if (img.algebra() != f.target_)
                throw AlgebraMismatch("image of '" + f.source_->table()->name(v) +
                                      "' lies outside the target algebra");
        for (int v : f.source_->parameters())
            if (!f.target_->table()->find(f.source_->table()->name(v)))
                throw DomainError("target lacks parameter '" + f.source_->table()->name(v) + "'");
        if (check) {
            CheckResult wd = f.well_defined();
            if (!wd.ok)
                throw DomainError("map does not respect relation: " + wd.certificate);
        }
        return f;
    }

    static AlgebraMap make_by_name(const AlgebraPtr& source, const AlgebraPtr& target,
                                   const std::map<std::string, AlgebraElement>& images,
                                   bool check = true) {
        std::map<int, AlgebraElement> byid;
        for (auto& [name, img] : images)
            byid[source->table()->require(name)] = img;
        return make(source, target, std::move(byid), check);
    }

    static AlgebraMap identity(const AlgebraPtr& a) {
        std::map<int, AlgebraElement> images;
        for (int v : a->main_vars()) images[v] = AlgebraElement::variable(a, v);
        return make(a, a, std::move(images), false);
    }

    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    const AlgebraElement& image(int v) const { return images_.at(v); }

    bool is_identity() const {
        if (source_ != target_) return false;
        for (auto& [v, img] : images_)
            if (!(img == AlgebraElement::variable(source_, v))) return false;
        return true;
    }

    AlgebraElement apply_poly(const Poly& p) const {
        AlgebraElement acc = AlgebraElement::zero(target_);
        for (auto& [m, c] : p.terms()) {
            AlgebraElement t = AlgebraElement::constant(target_, c);
            for (auto& [v, e] : m.exponents()) {
                if (source_->table()->is_parameter(v)) {
                    int w = target_->table()->require(source_->table()->name(v));
                    t *= AlgebraElement::variable(target_, w).pow(static_cast<unsigned>(e));
                } else {
                    t *= images_.at(v).pow(static_cast<unsigned>(e));
                }
            }
            acc += t;
        }
        return acc;
    }

    AlgebraElement apply(const AlgebraElement& e) const {
        if (e.algebra() != source_)
            throw AlgebraMismatch("element is not in the map's source algebra");
        return apply_poly(e.rep());
    }

    AlgebraElement operator()(const AlgebraElement& e) const { return apply(e); }

    // this ∘ inner
    AlgebraMap compose(const AlgebraMap& inner) const {
        if (inner.target_ != source_)
            throw AlgebraMismatch("composition of non-matching maps");
        std::map<int, AlgebraElement> images;
        for (auto& [v, img] : inner.images_) images[v] = apply(img);
        return make(inner.source_, target_, std::move(images), false);
    }

    CheckResult well_defined() const {
        for (const Poly& r : source_->relations())
            if (!apply_poly(r).is_zero())
                return CheckResult::fail(r.to_string());
        return CheckResult::pass();
    }

    // Replace the image of one generator; skips the well-definedness check on purpose.
    AlgebraMap with_image(const std::string& var, const AlgebraElement& img) const {
        std::map<int, AlgebraElement> images = images_;
        images[source_->table()->require(var)] = img;
        return make(source_, target_, std::move(images), false);
    }

    bool agrees_with(const AlgebraMap& o) const {
        if (source_ != o.source_ || target_ != o.target_) return false;
        for (auto& [v, img] : images_)
            if (!(img == o.images_.at(v))) return false;
        return true;
    }

private:
    AlgebraPtr source_, target_;
    std::map<int, AlgebraElement> images_;
};

// Factor embeddings of a tensor power, as algebra maps.
inline std::vector<AlgebraMap> tensor_embeddings(const AlgebraPtr& a, const TensorPower& t) {
    std::vector<AlgebraMap> maps;
    for (auto& vm : t.var_maps) {
        std::map<int, AlgebraElement> images;
        for (int v : a->main_vars())
            images[v] = AlgebraElement::variable(t.algebra, vm.at(v));
        maps.push_back(AlgebraMap::make(a, t.algebra, std::move(images), false));
    }
    return maps;
}

} // namespace dk
