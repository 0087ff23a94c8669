#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "derivation.hpp"
#include "dgroup.hpp"
#include "dme.hpp"
#include "hopf.hpp"
#include "ideal.hpp"
#include "map.hpp"
#include "matrix.hpp"
#include "ore.hpp"
#include "polyparse.hpp"

namespace dk {

// .spec files are line-oriented sectioned text.  '#' starts a comment anywhere, blank
// lines are skipped, and expressions use the infix grammar of polyparse.hpp.
//
//   [algebra]     vars x, y / params c / unit x_inv = x / relation x^2 - 1
//   [delta]       x = x*y                 one image per generator
//   [sigma]       y = y + 1
//   [hopf]        coproduct x = x@1 * x@2 / counit x = 1 / antipode x = x_inv
//   [section]     matrix = x, y; 0, 1     rows split on ';', entries on ','
//                 sbar = x*y, ...; 0, 0
//   [ore]         var x / sigma_inverse y = y - 1 / coproduct_x = X1 + X2
//   [candidates]  P prime = y             generators after '=', comma separated
//
// [hopf] is only needed when there is no [section] matrix; tensor copies are written
// name@1, name@2.  In coproduct_x the symbols X1 and X2 stand for the Ore variable
// placed in the first and second tensor factor.  Relation lines are read before unit
// lines, so relations may not mention inverse names.
struct SpecDocument {
    struct Line {
        std::string key;
        std::string value;
        int line = 0;
    };
    struct UnitDecl {
        std::string inverse;
        std::string element;
        int line = 0;
    };
    struct CandidateDecl {
        std::string name;
        bool prime = false;
        std::vector<std::string> gens;
        int line = 0;
    };

    std::vector<std::string> vars;
    std::vector<std::string> params;
    std::vector<UnitDecl> units;
    std::vector<Line> relations; // key unused
    std::vector<Line> delta;
    std::vector<Line> sigma;
    std::vector<Line> coproduct;
    std::vector<Line> counit;
    std::vector<Line> antipode;
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::vector<std::string>> sbar;
    int matrix_line = 0;
    int sbar_line = 0;
    std::string ore_var = "x";
    std::vector<Line> sigma_inverse;
    std::optional<Line> coproduct_x;
    std::vector<CandidateDecl> candidates;

    bool has_section() const { return !matrix.empty(); }
    bool has_hopf_block() const {
        return !coproduct.empty() || !counit.empty() || !antipode.empty();
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s, char sep, int line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    for (auto& item : out)
        if (item.empty()) throw ParseError("empty list item", line, 1);
    return out;
}

inline bool is_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '@' && c != '\'')
            return false;
    return true;
}

// "key = value" with a single '=' split; key may be several space-separated words.
inline std::pair<std::string, std::string> split_eq(const std::string& s, int line) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected '='", line, 1);
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("missing name before '='", line, 1);
    if (value.empty()) throw ParseError("missing expression after '='", line, 1);
    return {key, value};
}

inline std::vector<std::vector<std::string>> split_rows(const std::string& s, int line) {
    std::vector<std::vector<std::string>> rows;
    for (const std::string& row : split_list(s, ';', line))
        rows.push_back(split_list(row, ',', line));
    if (rows.empty()) throw ParseError("empty matrix", line, 1);
    for (auto& r : rows)
        if (r.size() != rows.size())
            throw ParseError("matrix must be square", line, 1);
    return rows;
}

} // namespace detail

inline SpecDocument parse_spec(const std::string& text) {
    using detail::is_name;
    using detail::split_eq;
    using detail::split_list;
    using detail::trim;

    SpecDocument doc;
    std::map<std::string, int> declared; // any declared name -> line
    auto declare = [&](const std::string& n, int ln) {
        if (!is_name(n)) throw ParseError("bad name '" + n + "'", ln, 1);
        if (declared.count(n)) throw ParseError("duplicate variable '" + n + "'", ln, 1);
        declared[n] = ln;
    };
    auto image_key = [&](std::vector<SpecDocument::Line>& block, const std::string& key,
                         int ln) {
        for (auto& l : block)
            if (l.key == key) throw ParseError("duplicate image for '" + key + "'", ln, 1);
    };

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int algebra_line = 0;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = trim(raw);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError("unterminated section header", ln, 1);
            section = s.substr(1, s.size() - 2);
            static const char* known[] = {"algebra", "delta",      "sigma", "hopf",
                                          "section", "ore",        "candidates"};
            bool ok = false;
            for (auto* k : known) ok = ok || section == k;
            if (!ok) throw ParseError("unknown section '[" + section + "]'", ln, 1);
            if (section == "algebra") algebra_line = ln;
            continue;
        }
        if (section.empty()) throw ParseError("line outside any section", ln, 1);

        std::size_t sp = s.find_first_of(" \t");
        std::string head = s.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : trim(s.substr(sp));

        if (section == "algebra") {
            if (head == "vars" || head == "params") {
                if (rest.empty()) throw ParseError("expected a name list", ln, 1);
                for (auto& n : split_list(rest, ',', ln)) {
                    declare(n, ln);
                    (head == "vars" ? doc.vars : doc.params).push_back(n);
                }
            } else if (head == "unit") {
                auto [key, value] = split_eq(rest, ln);
                declare(key, ln);
                doc.units.push_back({key, value, ln});
            } else if (head == "relation") {
                if (rest.empty()) throw ParseError("expected an expression", ln, 1);
                doc.relations.push_back({"", rest, ln});
            } else {
                throw ParseError("expected vars, params, unit or relation", ln, 1);
            }
        } else if (section == "delta" || section == "sigma") {
            auto [key, value] = split_eq(s, ln);
            auto& block = section == "delta" ? doc.delta : doc.sigma;
            image_key(block, key, ln);
            block.push_back({key, value, ln});
        } else if (section == "hopf") {
            auto [key, value] = split_eq(rest, ln);
            std::vector<SpecDocument::Line>* block = nullptr;
            if (head == "coproduct") block = &doc.coproduct;
            else if (head == "counit") block = &doc.counit;
            else if (head == "antipode") block = &doc.antipode;
            else throw ParseError("expected coproduct, counit or antipode", ln, 1);
            image_key(*block, key, ln);
            block->push_back({key, value, ln});
        } else if (section == "section") {
            auto [key, value] = split_eq(s, ln);
            if (key == "matrix") {
                if (!doc.matrix.empty()) throw ParseError("matrix given twice", ln, 1);
                doc.matrix = detail::split_rows(value, ln);
                doc.matrix_line = ln;
            } else if (key == "sbar") {
                if (!doc.sbar.empty()) throw ParseError("sbar given twice", ln, 1);
                doc.sbar = detail::split_rows(value, ln);
                doc.sbar_line = ln;
            } else {
                throw ParseError("expected matrix or sbar", ln, 1);
            }
        } else if (section == "ore") {
            if (head == "var") {
                if (!is_name(rest)) throw ParseError("bad name '" + rest + "'", ln, 1);
                doc.ore_var = rest;
            } else if (head == "sigma_inverse") {
                auto [key, value] = split_eq(rest, ln);
                image_key(doc.sigma_inverse, key, ln);
                doc.sigma_inverse.push_back({key, value, ln});
            } else if (head == "coproduct_x") {
                auto [key, value] = split_eq(s, ln);
                (void)key;
                if (doc.coproduct_x) throw ParseError("coproduct_x given twice", ln, 1);
                doc.coproduct_x = SpecDocument::Line{"", value, ln};
            } else {
                throw ParseError("expected var, sigma_inverse or coproduct_x", ln, 1);
            }
        } else { // candidates
            auto [key, value] = split_eq(s, ln);
            std::istringstream kw(key);
            std::vector<std::string> words;
            for (std::string w; kw >> w;) words.push_back(w);
            SpecDocument::CandidateDecl c;
            c.line = ln;
            c.name = words[0];
            if (words.size() == 2 && words[1] == "prime") c.prime = true;
            else if (words.size() != 1)
                throw ParseError("expected 'NAME = gens' or 'NAME prime = gens'", ln, 1);
            if (!is_name(c.name)) throw ParseError("bad name '" + c.name + "'", ln, 1);
            for (auto& other : doc.candidates)
                if (other.name == c.name)
                    throw ParseError("duplicate candidate '" + c.name + "'", ln, 1);
            c.gens = split_list(value, ',', ln);
            doc.candidates.push_back(c);
        }
    }

    if (doc.vars.empty()) throw ParseError("no variables", algebra_line, 1);
    if (!doc.sbar.empty() && doc.matrix.empty())
        throw ParseError("sbar without a matrix", doc.sbar_line, 1);
    if (!doc.sbar.empty() && doc.sbar.size() != doc.matrix.size())
        throw ParseError("sbar and matrix sizes differ", doc.sbar_line, 1);

    // Name-resolution pass: parse every expression against the table it will be read
    // with at build time, so errors carry the offending line.
    std::vector<VarTable::Entry> base;
    for (auto& v : doc.vars) base.push_back({v, false});
    for (auto& p : doc.params) base.push_back({p, true});
    VarTablePtr t0 = VarTable::make(base);
    for (auto& r : doc.relations) parse_poly(r.value, t0, r.line);
    VarTablePtr full = t0;
    for (auto& u : doc.units) {
        parse_poly(u.element, full, u.line);
        full = full->extended({{u.inverse, false}});
    }

    std::vector<VarTable::Entry> sq;
    for (int v = 0; v < full->size(); ++v)
        if (!full->is_parameter(v)) {
            sq.push_back({full->name(v) + "@1", false});
            sq.push_back({full->name(v) + "@2", false});
        }
    std::vector<VarTable::Entry> ponly;
    for (int v = 0; v < full->size(); ++v)
        if (full->is_parameter(v)) {
            sq.push_back({full->name(v), true});
            ponly.push_back({full->name(v), true});
        }
    VarTablePtr square = VarTable::make(sq);
    VarTablePtr params = VarTable::make(ponly);

    auto check_images = [&](const std::vector<SpecDocument::Line>& block,
                            const VarTablePtr& value_table) {
        for (auto& l : block) {
            auto v = full->find(l.key);
            if (!v || full->is_parameter(*v))
                throw ParseError("unknown variable '" + l.key + "'", l.line, 1);
            parse_poly(l.value, value_table, l.line);
        }
    };
    check_images(doc.delta, full);
    check_images(doc.sigma, full);
    check_images(doc.sigma_inverse, full);
    check_images(doc.coproduct, square);
    check_images(doc.counit, params);
    check_images(doc.antipode, full);
    for (auto& row : doc.matrix)
        for (auto& e : row) parse_poly(e, full, doc.matrix_line);
    for (auto& row : doc.sbar)
        for (auto& e : row) parse_poly(e, full, doc.sbar_line);
    if (doc.coproduct_x) {
        VarTablePtr xt = square->extended({{"X1", false}, {"X2", false}});
        parse_poly(doc.coproduct_x->value, xt, doc.coproduct_x->line);
    }
    for (auto& c : doc.candidates)
        for (auto& g : c.gens) parse_poly(g, full, c.line);

    return doc;
}

inline std::string format_spec(const SpecDocument& doc) {
    std::ostringstream o;
    auto join = [](const std::vector<std::string>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
        return s;
    };
    auto rows = [&](const std::vector<std::vector<std::string>>& m) {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "; " : "") + join(m[i]);
        return s;
    };

    o << "[algebra]\n";
    o << "vars " << join(doc.vars) << "\n";
    if (!doc.params.empty()) o << "params " << join(doc.params) << "\n";
    for (auto& u : doc.units) o << "unit " << u.inverse << " = " << u.element << "\n";
    for (auto& r : doc.relations) o << "relation " << r.value << "\n";
    if (!doc.delta.empty()) {
        o << "\n[delta]\n";
        for (auto& l : doc.delta) o << l.key << " = " << l.value << "\n";
    }
    if (!doc.sigma.empty()) {
        o << "\n[sigma]\n";
        for (auto& l : doc.sigma) o << l.key << " = " << l.value << "\n";
    }
    if (doc.has_hopf_block()) {
        o << "\n[hopf]\n";
        for (auto& l : doc.coproduct) o << "coproduct " << l.key << " = " << l.value << "\n";
        for (auto& l : doc.counit) o << "counit " << l.key << " = " << l.value << "\n";
        for (auto& l : doc.antipode) o << "antipode " << l.key << " = " << l.value << "\n";
    }
    if (doc.has_section()) {
        o << "\n[section]\n";
        o << "matrix = " << rows(doc.matrix) << "\n";
        if (!doc.sbar.empty()) o << "sbar = " << rows(doc.sbar) << "\n";
    }
    if (doc.ore_var != "x" || !doc.sigma_inverse.empty() || doc.coproduct_x) {
        o << "\n[ore]\n";
        if (doc.ore_var != "x") o << "var " << doc.ore_var << "\n";
        for (auto& l : doc.sigma_inverse)
            o << "sigma_inverse " << l.key << " = " << l.value << "\n";
        if (doc.coproduct_x) o << "coproduct_x = " << doc.coproduct_x->value << "\n";
    }
    if (!doc.candidates.empty()) {
        o << "\n[candidates]\n";
        for (auto& c : doc.candidates)
            o << c.name << (c.prime ? " prime" : "") << " = " << join(c.gens) << "\n";
    }
    return o.str();
}

// Reads an Ore polynomial from commutative infix text: the Ore variable is appended to
// the base table, the text is parsed as a commutative polynomial, and the coefficient
// of each x-power is taken as a left coefficient.
inline OrePoly parse_ore_poly(const OreRingPtr& A, const std::string& text, int line = 0) {
    const VarTablePtr& bt = A->base()->table();
    if (bt->find(A->x_name()))
        throw DomainError("base ring already has a variable named '" + A->x_name() + "'");
    VarTablePtr ext = bt->extended({{A->x_name(), false}});
    Poly p = parse_poly(text, ext, line);
    int xv = ext->size() - 1;
    std::map<int, Poly> by_power;
    for (auto& [m, c] : p.terms()) {
        int e = m.exponent(xv);
        Monomial rest = m.divide(Monomial::var(xv, e));
        auto it = by_power.emplace(e, Poly(bt)).first;
        it->second += Poly::term(bt, c, rest);
    }
    std::vector<AlgebraElement> cs;
    if (!by_power.empty()) {
        cs.assign(by_power.rbegin()->first + 1, AlgebraElement::zero(A->base()));
        for (auto& [e, q] : by_power) cs[e] = AlgebraElement(A->base(), q);
    }
    return OrePoly(A, std::move(cs));
}

// Reads a coproduct_x candidate: X1 and X2 are the Ore variable's copies in the two
// tensor factors; coefficients land in base⊗base.
inline DoubledOrePoly parse_doubled_x(const Hopf& h, const std::string& text, int line = 0) {
    VarTablePtr ext = h.square->table()->extended({{"X1", false}, {"X2", false}});
    Poly p = parse_poly(text, ext, line);
    int v1 = *ext->find("X1");
    int v2 = *ext->find("X2");
    std::map<std::pair<int, int>, Poly> by_power;
    for (auto& [m, c] : p.terms()) {
        int e1 = m.exponent(v1);
        int e2 = m.exponent(v2);
        Monomial rest = m.divide(Monomial::var(v1, e1) * Monomial::var(v2, e2));
        auto it = by_power.emplace(std::make_pair(e1, e2), Poly(h.square->table())).first;
        it->second += Poly::term(h.square->table(), c, rest);
    }
    DoubledOrePoly d{h.square, {}};
    for (auto& [ij, q] : by_power) d.coeffs[ij] = AlgebraElement(h.square, q);
    return d;
}

// Lazily constructs engine objects from a parsed document; every block goes through
// its module's own well-definedness checks.  Construction is cached, so repeated
// access inside one command does not recompute Groebner bases.
class BuiltSpec {
public:
    explicit BuiltSpec(SpecDocument doc, GroebnerOptions opts = {})
        : doc_(std::move(doc)), opts_(opts) {}

    const SpecDocument& doc() const { return doc_; }

    const AlgebraPtr& algebra() {
        if (!algebra_) {
            std::vector<VarTable::Entry> entries;
            for (auto& v : doc_.vars) entries.push_back({v, false});
            for (auto& p : doc_.params) entries.push_back({p, true});
            VarTablePtr t0 = VarTable::make(entries);
            std::vector<Poly> rels;
            for (auto& r : doc_.relations) rels.push_back(parse_poly(r.value, t0, r.line));
            AlgebraPtr a = Algebra::make(t0, std::move(rels), {}, opts_);
            for (auto& u : doc_.units)
                a = localize(a, parse_poly(u.element, a->table(), u.line), u.inverse);
            algebra_ = a;
        }
        return algebra_;
    }

    AlgebraElement element(const std::string& text, int line = 0) {
        return AlgebraElement(algebra(), parse_poly(text, algebra()->table(), line));
    }

    bool has_delta() const { return !doc_.delta.empty(); }
    bool has_sigma() const { return !doc_.sigma.empty(); }

    const Derivation& delta() {
        if (!delta_) {
            if (!has_delta()) throw DomainError("spec has no [delta] block");
            std::map<std::string, AlgebraElement> images;
            for (auto& l : doc_.delta) images[l.key] = element(l.value, l.line);
            std::optional<AlgebraMap> twist;
            if (has_sigma()) twist = sigma();
            delta_ = Derivation::make_by_name(algebra(), images, std::move(twist));
        }
        return *delta_;
    }

    const AlgebraMap& sigma() {
        if (!sigma_) {
            if (!has_sigma()) throw DomainError("spec has no [sigma] block");
            sigma_ = map_from_lines(doc_.sigma, algebra(), algebra(), "sigma");
        }
        return *sigma_;
    }

    MatrixGroupSpec group() {
        if (!doc_.has_section()) throw DomainError("spec has no [section] matrix");
        return {static_cast<int>(doc_.matrix.size()), algebra(),
                matrix_from(doc_.matrix, doc_.matrix_line)};
    }

    const MatrixDVariety& dvariety() {
        if (!dvar_) {
            if (doc_.sbar.empty()) throw DomainError("spec has no sbar matrix");
            dvar_ = MatrixDVariety::make(group(), matrix_from(doc_.sbar, doc_.sbar_line));
            if (has_delta()) {
                const Derivation& d = delta();
                for (int v : algebra()->main_vars())
                    if (!(dvar_->induced.image(v) == d.image(v)))
                        throw DomainError("[delta] disagrees with the section at '" +
                                          algebra()->table()->name(v) + "'");
            }
        }
        return *dvar_;
    }

    const Hopf& hopf() {
        if (!hopf_) {
            if (doc_.has_section()) {
                hopf_ = hopf_from_matrix_group(group());
            } else if (doc_.has_hopf_block()) {
                const AlgebraPtr& a = algebra();
                TensorPower t2 = tensor_power(a, 2);
                Hopf h;
                h.algebra = a;
                h.square = t2.algebra;
                h.emb = tensor_embeddings(a, t2);
                h.params = parameter_algebra(a);
                h.coproduct = map_from_lines(doc_.coproduct, a, h.square, "coproduct");
                h.counit = map_from_lines(doc_.counit, a, h.params, "counit");
                h.antipode = map_from_lines(doc_.antipode, a, a, "antipode");
                hopf_ = std::move(h);
            } else {
                throw DomainError("spec has neither a [section] matrix nor a [hopf] block");
            }
        }
        return *hopf_;
    }

    const OreRingPtr& ore() {
        if (!ore_) {
            const AlgebraPtr& a = algebra();
            AlgebraMap sg = has_sigma() ? sigma() : AlgebraMap::identity(a);
            AlgebraMap sginv = AlgebraMap::identity(a);
            if (!doc_.sigma_inverse.empty())
                sginv = map_from_lines(doc_.sigma_inverse, a, a, "sigma_inverse");
            else if (has_sigma() && !sg.is_identity())
                throw DomainError("[ore] needs sigma_inverse lines when sigma is not the identity");
            Derivation d = has_delta() ? delta() : Derivation::zero(a);
            ore_ = OreRing::make(a, std::move(sg), std::move(sginv), std::move(d),
                                 doc_.ore_var);
        }
        return ore_;
    }

    const std::vector<DeltaIdealCandidate>& candidates() {
        if (!cands_) {
            std::vector<DeltaIdealCandidate> cs;
            for (auto& c : doc_.candidates) {
                std::vector<AlgebraElement> gens;
                for (auto& g : c.gens) gens.push_back(element(g, c.line));
                cs.push_back({c.name, Ideal::make(algebra(), gens), c.prime});
            }
            cands_ = std::move(cs);
        }
        return *cands_;
    }

    const DeltaIdealCandidate& candidate(const std::string& name) {
        for (auto& c : candidates())
            if (c.name == name) return c;
        throw DomainError("no candidate named '" + name + "'");
    }

private:
    Matrix matrix_from(const std::vector<std::vector<std::string>>& rows, int line) {
        std::vector<std::vector<AlgebraElement>> es;
        for (auto& r : rows) {
            std::vector<AlgebraElement> row;
            for (auto& e : r) row.push_back(element(e, line));
            es.push_back(std::move(row));
        }
        return Matrix::from_rows(es);
    }

    // Images for the listed generators, then derived images for declared inverse
    // variables: the image of 1/f is the evident inverse of the image of f.
    AlgebraMap map_from_lines(const std::vector<SpecDocument::Line>& lines,
                              const AlgebraPtr& src, const AlgebraPtr& target,
                              const char* what) {
        std::map<int, AlgebraElement> images;
        for (auto& l : lines) {
            int v = src->table()->require(l.key);
            images[v] = AlgebraElement(target, parse_poly(l.value, target->table(), l.line));
        }
        for (auto& u : src->units()) {
            if (src->table()->is_parameter(u.inverse_var)) continue; // scalars stay fixed
            if (images.count(u.inverse_var)) continue;
            std::map<int, Poly> sub;
            for (auto& [v, img] : images) sub[v] = img.rep();
            for (int v : src->parameters())
                sub[v] = Poly::variable(target->table(),
                                        target->table()->require(src->table()->name(v)));
            Poly fimg = u.element.substitute(sub, target->table());
            auto inv = try_invert(AlgebraElement(target, fimg));
            if (!inv)
                throw DomainError(std::string(what) + " has no image for '" +
                                  src->table()->name(u.inverse_var) +
                                  "': the unit's image has no evident inverse");
            images[u.inverse_var] = *inv;
        }
        return AlgebraMap::make(src, target, std::move(images), true);
    }

    SpecDocument doc_;
    GroebnerOptions opts_;
    AlgebraPtr algebra_;
    std::optional<Derivation> delta_;
    std::optional<AlgebraMap> sigma_;
    std::optional<Hopf> hopf_;
    std::optional<MatrixDVariety> dvar_;
    OreRingPtr ore_;
    std::optional<std::vector<DeltaIdealCandidate>> cands_;
};

} // namespace dk
