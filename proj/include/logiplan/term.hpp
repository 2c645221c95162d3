#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "logiplan/error.hpp"
#include "logiplan/relation.hpp"

namespace logiplan {

enum class Tag : std::uint8_t { atom, var, int_, float_, str, compound, relation };

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable symbolic term. Lists are sugar: [X|Xs] is '.'(X, Xs) ending in
/// the atom []. A relation handle behaves as the ground list [Header|Data]
/// but keeps the table in native form until something inspects its structure.
class Term {
public:
    Tag tag;
    std::string text;            // atom name, functor, string payload, or var name
    std::int64_t ival = 0;
    double fval = 0.0;
    std::uint64_t var = 0;       // variable id, unique per solver invocation
    std::vector<TermPtr> args;   // compound arguments, arity >= 1
    RelationPtr rel;

    explicit Term(Tag t) : tag(t) {}

    static TermPtr make_atom(std::string name) {
        auto t = std::make_shared<Term>(Tag::atom);
        t->text = std::move(name);
        return t;
    }
    static TermPtr make_var(std::string name, std::uint64_t id) {
        auto t = std::make_shared<Term>(Tag::var);
        t->text = std::move(name);
        t->var = id;
        return t;
    }
    static TermPtr make_int(std::int64_t v) {
        auto t = std::make_shared<Term>(Tag::int_);
        t->ival = v;
        return t;
    }
    static TermPtr make_float(double v) {
        auto t = std::make_shared<Term>(Tag::float_);
        t->fval = v;
        return t;
    }
    static TermPtr make_str(std::string v) {
        auto t = std::make_shared<Term>(Tag::str);
        t->text = std::move(v);
        return t;
    }
    static TermPtr make_compound(std::string functor, std::vector<TermPtr> args) {
        if (args.empty()) return make_atom(std::move(functor));
        auto t = std::make_shared<Term>(Tag::compound);
        t->text = std::move(functor);
        t->args = std::move(args);
        return t;
    }
    static TermPtr make_relation(RelationPtr rel) {
        auto t = std::make_shared<Term>(Tag::relation);
        t->rel = std::move(rel);
        return t;
    }

    static const TermPtr& nil() {
        static const TermPtr t = make_atom("[]");
        return t;
    }
    static const TermPtr& true_atom() {
        static const TermPtr t = make_atom("true");
        return t;
    }
    static const TermPtr& false_atom() {
        static const TermPtr t = make_atom("false");
        return t;
    }

    bool is_atom() const { return tag == Tag::atom; }
    bool is_atom(const std::string& name) const { return tag == Tag::atom && text == name; }
    bool is_var() const { return tag == Tag::var; }
    bool is_int() const { return tag == Tag::int_; }
    bool is_float() const { return tag == Tag::float_; }
    bool is_number() const { return tag == Tag::int_ || tag == Tag::float_; }
    bool is_str() const { return tag == Tag::str; }
    bool is_compound() const { return tag == Tag::compound; }
    bool is_relation() const { return tag == Tag::relation; }
    bool is_callable() const { return tag == Tag::atom || tag == Tag::compound; }
    bool is_nil() const { return is_atom("[]"); }
    bool is_cons() const { return tag == Tag::compound && text == "." && args.size() == 2; }

    const std::string& functor() const { return text; }
    std::size_t arity() const { return tag == Tag::compound ? args.size() : 0; }

    double number() const {
        if (tag == Tag::int_) return static_cast<double>(ival);
        if (tag == Tag::float_) return fval;
        throw Error(ErrorKind::type, "number expected");
    }
};

inline TermPtr cons(TermPtr head, TermPtr tail) {
    return Term::make_compound(".", {std::move(head), std::move(tail)});
}

inline TermPtr make_list(const std::vector<TermPtr>& items, TermPtr tail = Term::nil()) {
    TermPtr acc = std::move(tail);
    for (auto it = items.rbegin(); it != items.rend(); ++it) acc = cons(*it, acc);
    return acc;
}

inline TermPtr reify_relation(const Relation& rel);

/// Collects a proper list into a vector; fails on partial lists and
/// unbound tails. Relation handles read as their [Header|Data] list.
inline bool list_to_vector(const TermPtr& t, std::vector<TermPtr>& out) {
    TermPtr cur = t;
    while (true) {
        if (cur->is_nil()) return true;
        if (cur->is_relation()) {
            cur = reify_relation(*cur->rel);
            continue;
        }
        if (!cur->is_cons()) return false;
        out.push_back(cur->args[0]);
        cur = cur->args[1];
    }
}

inline bool is_ground(const TermPtr& t) {
    if (t->is_var()) return false;
    for (const auto& a : t->args)
        if (!is_ground(a)) return false;
    return true;
}

inline void collect_vars(const TermPtr& t, std::vector<TermPtr>& out) {
    if (t->is_var()) {
        out.push_back(t);
        return;
    }
    for (const auto& a : t->args) collect_vars(a, out);
}

// --- Relation <-> term conversion -----------------------------------------

inline TermPtr term_from_value(const Value& v) {
    if (v.is_null()) return Term::make_atom("null");
    if (v.is_bool()) return v.as_bool() ? Term::true_atom() : Term::false_atom();
    if (v.is_int()) return Term::make_int(v.as_int());
    if (v.is_double()) return Term::make_float(v.as_double());
    if (v.is_string()) return Term::make_atom(v.as_string());
    std::vector<TermPtr> items;
    for (const auto& x : v.as_list()) items.push_back(term_from_value(x));
    return make_list(items);
}

inline Value value_from_term(const TermPtr& t) {
    switch (t->tag) {
    case Tag::int_: return Value(t->ival);
    case Tag::float_: return Value(t->fval);
    case Tag::str: return Value(t->text);
    case Tag::atom:
        if (t->text == "true") return Value(true);
        if (t->text == "false") return Value(false);
        if (t->text == "null") return Value();
        return Value(t->text);
    case Tag::var:
        throw Error(ErrorKind::instantiation, "unbound variable where a data value was expected");
    default: {
        std::vector<TermPtr> items;
        if (list_to_vector(t, items)) {
            Value::List xs;
            for (const auto& i : items) xs.push_back(value_from_term(i));
            return Value(std::move(xs));
        }
        throw Error(ErrorKind::type, "cannot use a compound term as a data value");
    }
    }
}

inline TermPtr reify_relation(const Relation& rel) {
    std::vector<TermPtr> hdr;
    hdr.reserve(rel.header.size());
    for (const auto& f : rel.header) hdr.push_back(Term::make_atom(f));
    TermPtr acc = Term::nil();
    for (auto it = rel.rows.rbegin(); it != rel.rows.rend(); ++it) {
        std::vector<TermPtr> cells;
        cells.reserve(it->size());
        for (const auto& v : *it) cells.push_back(term_from_value(v));
        acc = cons(make_list(cells), acc);
    }
    return cons(make_list(hdr), acc);
}

/// Reads [Header|Data] (either a relation handle or a plain list term) into
/// a native relation.
inline RelationPtr relation_from_term(const TermPtr& t) {
    if (t->is_relation()) return t->rel;
    std::vector<TermPtr> items;
    if (!list_to_vector(t, items) || items.empty())
        throw Error(ErrorKind::type, "relation must be a nonempty [Header|Data] list");
    auto rel = std::make_shared<Relation>();
    std::vector<TermPtr> hdr;
    if (!list_to_vector(items[0], hdr))
        throw Error(ErrorKind::type, "relation header must be a list of field names");
    for (const auto& h : hdr) {
        if (h->is_atom())
            rel->header.push_back(h->text);
        else if (h->is_str())
            rel->header.push_back(h->text);
        else
            throw Error(ErrorKind::type, "field names must be atoms");
    }
    for (std::size_t i = 1; i < items.size(); ++i) {
        std::vector<TermPtr> cells;
        if (!list_to_vector(items[i], cells) || cells.size() != rel->header.size())
            throw Error(ErrorKind::type, "relation row " + std::to_string(i) +
                                             " does not match header arity");
        Row row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(value_from_term(c));
        rel->rows.push_back(std::move(row));
    }
    rel->check_well_formed();
    return rel;
}

// --- Standard order of terms -----------------------------------------------
// Var < numbers < Atom < Str < Compound; numbers compare numerically with
// Float ordered before Int on ties; compounds by arity, functor, then args.

inline int compare_terms(const TermPtr& a, const TermPtr& b);

inline int type_rank(const Term& t) {
    switch (t.tag) {
    case Tag::var: return 0;
    case Tag::int_:
    case Tag::float_: return 1;
    case Tag::atom: return 2;
    case Tag::str: return 3;
    default: return 4;  // compound and relation handles
    }
}

inline int compare_terms(const TermPtr& a, const TermPtr& b) {
    if (a->is_relation() || b->is_relation()) {
        TermPtr ra = a->is_relation() ? reify_relation(*a->rel) : a;
        TermPtr rb = b->is_relation() ? reify_relation(*b->rel) : b;
        return compare_terms(ra, rb);
    }
    int ra = type_rank(*a), rb = type_rank(*b);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a->tag) {
    case Tag::var:
        return a->var < b->var ? -1 : a->var > b->var ? 1 : 0;
    case Tag::int_:
    case Tag::float_: {
        double x = a->number(), y = b->number();
        if (x < y) return -1;
        if (x > y) return 1;
        if (a->tag == b->tag) return 0;
        return a->tag == Tag::float_ ? -1 : 1;
    }
    case Tag::atom:
    case Tag::str:
        return a->text.compare(b->text) < 0 ? -1 : a->text == b->text ? 0 : 1;
    default: {
        if (a->args.size() != b->args.size())
            return a->args.size() < b->args.size() ? -1 : 1;
        if (int c = a->text.compare(b->text))
            return c < 0 ? -1 : 1;
        for (std::size_t i = 0; i < a->args.size(); ++i)
            if (int c = compare_terms(a->args[i], b->args[i])) return c;
        return 0;
    }
    }
}

inline bool terms_equal(const TermPtr& a, const TermPtr& b) { return compare_terms(a, b) == 0; }

}  // namespace logiplan
