#include "ofd/cleaning.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "ofd/error.hpp"
#include "ofd/partition.hpp"
#include "ofd/serialize.hpp"

namespace ofd {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::size_t distinct_values(const Relation& r, AttrIndex a, std::span<const TupleId> tuples) {
    std::set<std::uint32_t> codes;
    for (TupleId t : tuples) codes.insert(r.code(t, a));
    return codes.size();
}

}  // namespace

ViolationReport report_violations(const Relation& r, const Ontology& o, const std::vector<Ofd>& ofds) {
    ViolationReport report{r.schema(), {}};
    Verifier verifier(r, o);
    for (const auto& d : ofds) {
        r.check(d.lhs.with(d.rhs));
        const StrippedPartition x = stripped_partition(r, d.lhs);
        const VerifyOutcome outcome = verifier.support(x, d.rhs, d.kind.radius());

        OfdViolations entry;
        entry.ofd = d;
        entry.support = outcome.support;
        entry.satisfied = outcome.satisfied;

        std::set<TupleId> failing;
        for (const auto& w : outcome.witnesses) {
            failing.insert(w.representative);
            if (distinct_values(r, d.rhs, w.majority_tuples) > 1) entry.syntactically_unequal += w.majority_tuples.size();

            ViolatingClass vc;
            vc.representative = w.representative;
            vc.tuples = w.tuples;
            vc.majority = w.majority;
            vc.majority_tuples = w.majority_tuples;
            const std::string& suggestion = r.cell(w.majority_tuples.front(), d.rhs);
            for (TupleId t : w.minority_tuples) vc.repairs.push_back({t, r.cell(t, d.rhs), suggestion});
            entry.classes.push_back(std::move(vc));
        }
        for (std::size_t i = 0; i < x.class_count(); ++i) {
            auto cls = x[i];
            if (!failing.contains(cls[0]) && distinct_values(r, d.rhs, cls) > 1)
                entry.syntactically_unequal += cls.size();
        }
        entry.false_positive_savings =
            entry.satisfied == 0 ? 0.0
                                 : static_cast<double>(entry.syntactically_unequal) / static_cast<double>(entry.satisfied);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

ojson to_json(const ViolationReport& report) {
    ojson out = ojson::array();
    for (const auto& e : report.entries) {
        ojson classes = ojson::array();
        for (const auto& c : e.classes) {
            ojson repairs = ojson::array();
            for (const auto& s : c.repairs)
                repairs.push_back({{"tuple", s.tuple}, {"value", s.value}, {"suggestion", s.suggestion}});
            classes.push_back({{"representative", c.representative},
                               {"tuples", c.tuples},
                               {"majority", c.majority.to_string()},
                               {"majority_tuples", c.majority_tuples},
                               {"minority", std::move(repairs)}});
        }
        out.push_back({{"ofd", ofd_to_json(report.schema, e.ofd)},
                       {"support", e.support},
                       {"satisfied", e.satisfied},
                       {"syntactically_unequal", e.syntactically_unequal},
                       {"false_positive_savings", e.false_positive_savings},
                       {"violations", std::move(classes)}});
    }
    return out;
}

std::string to_text(const ViolationReport& report) {
    std::ostringstream out;
    for (const auto& e : report.entries) {
        out << ofds_to_text(report.schema, {e.ofd});
        out << "  support=" << json(e.support).dump() << " satisfied=" << e.satisfied
            << " false_positive_savings=" << json(e.false_positive_savings).dump() << '\n';
        for (const auto& c : e.classes) {
            out << "  class " << c.representative << " (" << c.tuples.size() << " tuples, majority "
                << c.majority.to_string() << ")\n";
            for (const auto& s : c.repairs)
                out << "    tuple " << s.tuple << ": " << json(s.value).dump() << " -> " << json(s.suggestion).dump()
                    << '\n';
        }
    }
    return out.str();
}

InjectionResult inject_errors(const Relation& r, const Ontology& o, AttrSet columns, double rate,
                              std::uint64_t seed) {
    if (!(rate >= 0.0 && rate < 1.0)) throw ConfigError("error rate must lie in [0, 1)");
    if (columns.empty()) columns = r.all_attributes();
    r.check(columns);

    const std::vector<AttrIndex> cols = columns.to_vector();
    const std::size_t n = r.size();
    const std::size_t cells = n * cols.size();
    const auto wanted = std::min<std::size_t>(
        cells, static_cast<std::size_t>(std::max(0.0, std::ceil(rate * static_cast<double>(n) - 1e-9))));

    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates over the flattened (row, column) cells.
    std::vector<std::size_t> order(cells);
    for (std::size_t i = 0; i < cells; ++i) order[i] = i;
    for (std::size_t i = 0; i < wanted; ++i) std::swap(order[i], order[i + rng() % (cells - i)]);
    std::vector<std::size_t> picked(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(wanted));
    std::sort(picked.begin(), picked.end());

    auto rows = r.rows();
    InjectionResult result;
    for (std::size_t cell : picked) {
        const auto row = static_cast<TupleId>(cell / cols.size());
        const AttrIndex col = cols[cell % cols.size()];
        const auto& dictionary = r.column(col).dictionary;
        const std::string& old = r.cell(row, col);
        const auto old_names = o.names(old);

        std::vector<const std::string*> disjoint, different;
        for (const auto& v : dictionary) {
            if (v == old) continue;
            different.push_back(&v);
            const auto names = o.names(v);
            if (std::none_of(names.begin(), names.end(), [&](const ClassId& id) { return old_names.contains(id); }))
                disjoint.push_back(&v);
        }
        const auto& pool = disjoint.empty() ? different : disjoint;
        if (pool.empty()) continue;
        const std::string& replacement = *pool[rng() % pool.size()];
        rows[row][col] = replacement;
        result.log.push_back({row, col, old, replacement});
    }
    result.relation = Relation::from_rows(r.schema(), rows);
    return result;
}

ojson to_json(const std::vector<CellChange>& log, const std::vector<std::string>& schema) {
    ojson out = ojson::array();
    for (const auto& c : log)
        out.push_back({{"row", c.row}, {"column", schema.at(c.column)}, {"old", c.old_value}, {"new", c.new_value}});
    return out;
}

}  // namespace ofd
