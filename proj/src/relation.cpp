#include "ofd/relation.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ofd/error.hpp"

namespace ofd {

Relation Relation::from_rows(std::vector<std::string> schema, const std::vector<std::vector<std::string>>& rows) {
    if (schema.size() > AttrSet::kMaxAttributes)
        throw RelationError(RelationError::Code::too_many_attributes,
                            "relation has " + std::to_string(schema.size()) + " attributes; at most " +
                                std::to_string(AttrSet::kMaxAttributes) + " are supported");
    std::unordered_set<std::string> seen;
    for (const auto& name : schema) {
        if (!seen.insert(name).second)
            throw RelationError(RelationError::Code::duplicate_attribute, "duplicate attribute name '" + name + "'");
    }

    Relation r;
    r.schema_ = std::move(schema);
    r.columns_.resize(r.schema_.size());
    r.rows_ = rows.size();

    std::vector<std::unordered_map<std::string_view, std::uint32_t>> lookup(r.schema_.size());
    for (auto& c : r.columns_) c.codes.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != r.schema_.size())
            throw RelationError(RelationError::Code::ragged_row,
                                "row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                                    " cells, expected " + std::to_string(r.schema_.size()));
        for (std::size_t a = 0; a < row.size(); ++a) {
            auto& col = r.columns_[a];
            auto [it, inserted] = lookup[a].try_emplace(row[a], static_cast<std::uint32_t>(col.dictionary.size()));
            if (inserted) col.dictionary.push_back(row[a]);
            col.codes.push_back(it->second);
        }
    }
    return r;
}

std::optional<AttrIndex> Relation::find_attribute(std::string_view name) const {
    for (std::size_t i = 0; i < schema_.size(); ++i)
        if (schema_[i] == name) return static_cast<AttrIndex>(i);
    return std::nullopt;
}

AttrIndex Relation::attribute(std::string_view name) const {
    auto a = find_attribute(name);
    if (!a) throw RelationError(RelationError::Code::unknown_attribute, "unknown attribute '" + std::string(name) + "'");
    return *a;
}

AttrSet Relation::attributes(std::initializer_list<std::string_view> names) const {
    AttrSet s;
    for (auto n : names) s = s.with(attribute(n));
    return s;
}

void Relation::check(AttrSet attrs) const {
    if (!attrs.is_subset_of(all_attributes()))
        throw RelationError(RelationError::Code::unknown_attribute,
                            "attribute index " + std::to_string(attrs.max()) + " outside schema of " +
                                std::to_string(schema_.size()));
}

std::vector<std::vector<std::string>> Relation::rows() const {
    std::vector<std::vector<std::string>> out(rows_, std::vector<std::string>(schema_.size()));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t a = 0; a < schema_.size(); ++a)
            out[i][a] = cell(static_cast<TupleId>(i), static_cast<AttrIndex>(a));
    return out;
}

Relation Relation::with_cell(TupleId row, AttrIndex attr, const std::string& value) const {
    auto all = rows();
    all.at(row).at(attr) = value;
    return from_rows(schema_, all);
}

namespace {

// Splits into records; each record is a list of fields.
std::vector<std::vector<std::string>> split_records(std::string_view text, char delim) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;  // distinguishes an empty line from a line with one empty field
    std::size_t line = 1;

    auto end_record = [&] {
        if (field_started || !record.empty()) {
            record.push_back(std::move(field));
            records.push_back(std::move(record));
        }
        record.clear();
        field.clear();
        field_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
            field_started = true;
        } else if (c == delim) {
            record.push_back(std::move(field));
            field.clear();
            field_started = true;
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            // handled by the following '\n'
        } else if (c == '\n') {
            end_record();
            ++line;
        } else {
            field.push_back(c);
            field_started = true;
        }
    }
    if (in_quotes)
        throw RelationError(RelationError::Code::malformed, "unterminated quoted field near line " + std::to_string(line));
    end_record();
    return records;
}

}  // namespace

Relation parse_relation(std::string_view text, CsvOptions options) {
    if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
        static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF)
        text.remove_prefix(3);
    auto records = split_records(text, options.delimiter);
    if (records.empty()) throw RelationError(RelationError::Code::empty_input, "empty input");

    std::vector<std::string> schema;
    std::size_t first = 0;
    if (options.header) {
        schema = std::move(records[0]);
        first = 1;
    } else {
        for (std::size_t i = 0; i < records[0].size(); ++i) schema.push_back("A" + std::to_string(i + 1));
    }
    std::vector<std::vector<std::string>> rows(std::make_move_iterator(records.begin() + static_cast<std::ptrdiff_t>(first)),
                                               std::make_move_iterator(records.end()));
    return Relation::from_rows(std::move(schema), rows);
}

Relation load_relation(const std::filesystem::path& path, CsvOptions options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RelationError(RelationError::Code::malformed, "cannot open input file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_relation(buf.str(), options);
}

namespace {

void write_field(std::ostringstream& out, const std::string& s, char delim) {
    bool quote = s.find_first_of(std::string{delim, '"', '\n', '\r'}) != std::string::npos ||
                 (!s.empty() && s.front() == '"');
    if (!quote) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

std::string to_csv(const Relation& r, char delimiter) {
    std::ostringstream out;
    auto write_row = [&](auto&& get, std::size_t n) {
        for (std::size_t a = 0; a < n; ++a) {
            if (a) out << delimiter;
            write_field(out, get(a), delimiter);
        }
        // A single empty field would otherwise read back as a blank line.
        if (n == 1 && get(0).empty()) out << "\"\"";
        out << '\n';
    };
    write_row([&](std::size_t a) -> const std::string& { return r.schema()[a]; }, r.arity());
    for (std::size_t i = 0; i < r.size(); ++i)
        write_row([&](std::size_t a) -> const std::string& {
            return r.cell(static_cast<TupleId>(i), static_cast<AttrIndex>(a));
        }, r.arity());
    return out.str();
}

}  // namespace ofd
