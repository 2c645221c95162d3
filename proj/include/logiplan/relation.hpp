#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "logiplan/value.hpp"

namespace logiplan {

using Row = std::vector<Value>;

/// A table value: unique field names plus rows of matching arity.
/// Plans see relations as the list term [Header|Data].
struct Relation {
    std::vector<std::string> header;
    std::vector<Row> rows;

    Relation() = default;
    Relation(std::vector<std::string> h, std::vector<Row> r)
        : header(std::move(h)), rows(std::move(r)) {}

    std::size_t arity() const { return header.size(); }
    std::size_t size() const { return rows.size(); }

    int find_field(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }

    std::size_t field_index(const std::string& name) const {
        int i = find_field(name);
        if (i < 0) throw Error(ErrorKind::unknown_field, "no field '" + name + "' in relation");
        return static_cast<std::size_t>(i);
    }

    void check_well_formed() const {
        for (std::size_t i = 0; i < header.size(); ++i)
            for (std::size_t j = i + 1; j < header.size(); ++j)
                if (header[i] == header[j])
                    throw Error(ErrorKind::schema, "duplicate field '" + header[i] + "' in header");
        for (const auto& row : rows)
            if (row.size() != header.size())
                throw Error(ErrorKind::schema, "row arity " + std::to_string(row.size()) +
                                                   " does not match header arity " +
                                                   std::to_string(header.size()));
    }
};

using RelationPtr = std::shared_ptr<const Relation>;

enum class CmpOp { eq, ne, lt, le, gt, ge };

inline const char* to_string(CmpOp op) {
    switch (op) {
    case CmpOp::eq: return "eq";
    case CmpOp::ne: return "ne";
    case CmpOp::lt: return "lt";
    case CmpOp::le: return "le";
    case CmpOp::gt: return "gt";
    case CmpOp::ge: return "ge";
    }
    return "?";
}

/// Nested-list filter language: a leaf [field, value] tests equality, an
/// extended leaf [op, field, value] compares, [and|Es] / [or|Es] / [not, E]
/// combine. An empty filter accepts every row.
struct FilterExpr {
    enum class Kind { all, leaf, conj, disj, neg };

    Kind kind = Kind::all;
    CmpOp op = CmpOp::eq;        // leaf
    std::string field;           // leaf
    Value value;                 // leaf
    std::vector<FilterExpr> children;

    static FilterExpr accept_all() { return FilterExpr{}; }

    static FilterExpr leaf(CmpOp op, std::string field, Value v) {
        FilterExpr e;
        e.kind = Kind::leaf;
        e.op = op;
        e.field = std::move(field);
        e.value = std::move(v);
        return e;
    }

    static FilterExpr conj(std::vector<FilterExpr> es) {
        FilterExpr e;
        e.kind = Kind::conj;
        e.children = std::move(es);
        return e;
    }

    static FilterExpr disj(std::vector<FilterExpr> es) {
        FilterExpr e;
        e.kind = Kind::disj;
        e.children = std::move(es);
        return e;
    }

    static FilterExpr neg(FilterExpr inner) {
        FilterExpr e;
        e.kind = Kind::neg;
        e.children.push_back(std::move(inner));
        return e;
    }

    /// Ensures every leaf field exists in the header.
    void validate(const Relation& rel) const {
        switch (kind) {
        case Kind::all: return;
        case Kind::leaf: rel.field_index(field); return;
        default:
            for (const auto& c : children) c.validate(rel);
        }
    }

    bool matches(const Relation& rel, const Row& row) const {
        switch (kind) {
        case Kind::all: return true;
        case Kind::leaf: {
            const Value& cell = row[rel.field_index(field)];
            int c = Value::compare(cell, value);
            switch (op) {
            case CmpOp::eq: return cell == value;
            case CmpOp::ne: return cell != value;
            case CmpOp::lt: return c < 0;
            case CmpOp::le: return c <= 0;
            case CmpOp::gt: return c > 0;
            case CmpOp::ge: return c >= 0;
            }
            return false;
        }
        case Kind::conj:
            return std::all_of(children.begin(), children.end(),
                               [&](const FilterExpr& c) { return c.matches(rel, row); });
        case Kind::disj:
            return std::any_of(children.begin(), children.end(),
                               [&](const FilterExpr& c) { return c.matches(rel, row); });
        case Kind::neg:
            return !children.front().matches(rel, row);
        }
        return false;
    }
};

// ---------------------------------------------------------------------------
// Relation algebra. All operations are pure: inputs are untouched, outputs
// are fresh well-formed relations.

inline Relation filter_relation(const Relation& in, const FilterExpr& expr) {
    expr.validate(in);
    Relation out;
    out.header = in.header;
    for (const auto& row : in.rows)
        if (expr.matches(in, row)) out.rows.push_back(row);
    return out;
}

inline Relation project_relation(const Relation& in, const std::vector<std::string>& fields) {
    if (fields.empty()) throw Error(ErrorKind::domain, "projection must name at least one field");
    std::vector<std::size_t> idx;
    idx.reserve(fields.size());
    for (const auto& f : fields) idx.push_back(in.field_index(f));
    Relation out;
    out.header = fields;
    out.rows.reserve(in.rows.size());
    for (const auto& row : in.rows) {
        Row r;
        r.reserve(idx.size());
        for (auto i : idx) r.push_back(row[i]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

inline Relation count_relation(const Relation& in) {
    Relation out;
    out.header = {"count"};
    out.rows.push_back({Value(static_cast<std::int64_t>(in.rows.size()))});
    return out;
}

enum class AggOp { sum, avg, min, max, count };

inline const char* to_string(AggOp op) {
    switch (op) {
    case AggOp::sum: return "sum";
    case AggOp::avg: return "avg";
    case AggOp::min: return "min";
    case AggOp::max: return "max";
    case AggOp::count: return "count";
    }
    return "?";
}

/// One output row per group, groups ordered by first appearance; the
/// aggregate column is named <op>_<field>.
inline Relation aggregate_relation(const Relation& in, const std::vector<std::string>& group_by,
                                   AggOp op, const std::string& field) {
    std::vector<std::size_t> gidx;
    for (const auto& f : group_by) gidx.push_back(in.field_index(f));
    std::size_t fidx = in.field_index(field);

    if (op != AggOp::count) {
        for (const auto& row : in.rows)
            if (!row[fidx].is_numeric())
                throw Error(ErrorKind::type, "aggregate field '" + field + "' has non-numeric value " +
                                                 row[fidx].repr());
    }

    struct Acc {
        std::size_t n = 0;
        double sum = 0.0;
        std::int64_t isum = 0;
        bool all_int = true;
        Value min, max;
    };

    std::vector<Row> keys;
    std::vector<Acc> accs;
    std::map<Row, std::size_t> index;  // Row has lexicographic operator< via Value

    for (const auto& row : in.rows) {
        Row key;
        key.reserve(gidx.size());
        for (auto i : gidx) key.push_back(row[i]);
        auto it = index.find(key);
        std::size_t slot;
        if (it == index.end()) {
            slot = keys.size();
            index.emplace(key, slot);
            keys.push_back(key);
            accs.emplace_back();
        } else {
            slot = it->second;
        }
        Acc& a = accs[slot];
        const Value& v = row[fidx];
        a.n += 1;
        if (op != AggOp::count) {
            a.sum += v.numeric();
            if (v.is_int())
                a.isum += v.as_int();
            else if (v.is_bool())
                a.isum += v.as_bool() ? 1 : 0;
            else
                a.all_int = false;
            if (a.n == 1 || Value::compare(v, a.min) < 0) a.min = v;
            if (a.n == 1 || Value::compare(v, a.max) > 0) a.max = v;
        }
    }

    Relation out;
    out.header = group_by;
    out.header.push_back(std::string(to_string(op)) + "_" + field);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        Row r = keys[i];
        const Acc& a = accs[i];
        switch (op) {
        case AggOp::sum: r.push_back(a.all_int ? Value(a.isum) : Value(a.sum)); break;
        case AggOp::avg: r.push_back(Value(a.sum / static_cast<double>(a.n))); break;
        case AggOp::min: r.push_back(a.min); break;
        case AggOp::max: r.push_back(a.max); break;
        case AggOp::count: r.push_back(Value(static_cast<std::int64_t>(a.n))); break;
        }
        out.rows.push_back(std::move(r));
    }
    // Grouping over zero columns always yields exactly one row.
    if (group_by.empty() && out.rows.empty()) {
        Row r;
        switch (op) {
        case AggOp::sum: r.push_back(Value(std::int64_t{0})); break;
        case AggOp::count: r.push_back(Value(std::int64_t{0})); break;
        default: throw Error(ErrorKind::domain, std::string(to_string(op)) + " over an empty relation");
        }
        out.rows.push_back(std::move(r));
    }
    return out;
}

/// Stable sort by one field; k limits the output (SIZE_MAX keeps all rows).
inline Relation sort_relation(const Relation& in, const std::string& field, bool ascending,
                              std::size_t k) {
    if (k == 0) throw Error(ErrorKind::domain, "sort limit must be positive");
    std::size_t fidx = in.field_index(field);
    Relation out;
    out.header = in.header;
    out.rows = in.rows;
    std::stable_sort(out.rows.begin(), out.rows.end(), [&](const Row& a, const Row& b) {
        int c = Value::compare(a[fidx], b[fidx]);
        return ascending ? c < 0 : c > 0;
    });
    if (out.rows.size() > k) out.rows.resize(k);
    return out;
}

/// Flags outliers by robust z-score within each country group:
/// |x - median| / (1.4826 * MAD) > 3. With MAD = 0 any value off the median
/// is flagged. Requires eur_amount plus ip_country or issuing_country.
inline Relation anomaly_relation(const Relation& in) {
    int amount = in.find_field("eur_amount");
    if (amount < 0)
        throw Error(ErrorKind::unknown_field, "anomaly requires an eur_amount field");
    int group = in.find_field("ip_country");
    if (group < 0) group = in.find_field("issuing_country");
    if (group < 0)
        throw Error(ErrorKind::unknown_field,
                    "anomaly requires an ip_country or issuing_country field");

    auto median_of = [](std::vector<double> xs) {
        std::sort(xs.begin(), xs.end());
        std::size_t n = xs.size();
        return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
    };

    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < in.rows.size(); ++i)
        groups[in.rows[i][group].repr()].push_back(i);

    std::vector<int> flags(in.rows.size(), 0);
    for (const auto& [key, members] : groups) {
        (void)key;
        std::vector<double> xs;
        xs.reserve(members.size());
        for (auto i : members) xs.push_back(in.rows[i][amount].numeric());
        double med = median_of(xs);
        std::vector<double> devs;
        devs.reserve(xs.size());
        for (double x : xs) devs.push_back(std::fabs(x - med));
        double mad = median_of(devs);
        for (std::size_t j = 0; j < members.size(); ++j) {
            bool flagged = mad > 0.0 ? std::fabs(xs[j] - med) / (1.4826 * mad) > 3.0
                                     : xs[j] != med;
            flags[members[j]] = flagged ? 1 : 0;
        }
    }

    Relation out;
    out.header.reserve(in.header.size() + 1);
    out.header.push_back("is_anomaly");
    out.header.insert(out.header.end(), in.header.begin(), in.header.end());
    out.rows.reserve(in.rows.size());
    for (std::size_t i = 0; i < in.rows.size(); ++i) {
        Row r;
        r.reserve(in.rows[i].size() + 1);
        r.push_back(Value(static_cast<std::int64_t>(flags[i])));
        r.insert(r.end(), in.rows[i].begin(), in.rows[i].end());
        out.rows.push_back(std::move(r));
    }
    return out;
}

}  // namespace logiplan
