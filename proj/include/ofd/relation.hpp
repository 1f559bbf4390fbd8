#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ofd/attr_set.hpp"

namespace ofd {

struct CsvOptions {
    char delimiter = ',';
    bool header = true;
};

/// Immutable table of string cells. Each column is dictionary encoded: codes
/// are dense per column and assigned in first-seen row order, so equal codes
/// mean equal strings.
class Relation {
public:
    struct Column {
        std::vector<std::string> dictionary;
        std::vector<std::uint32_t> codes;
    };

    Relation() = default;

    /// Throws RelationError on duplicate attribute names or ragged rows.
    static Relation from_rows(std::vector<std::string> schema, const std::vector<std::vector<std::string>>& rows);

    const std::vector<std::string>& schema() const noexcept { return schema_; }
    std::size_t arity() const noexcept { return schema_.size(); }
    std::size_t size() const noexcept { return rows_; }

    const std::string& cell(TupleId row, AttrIndex attr) const {
        const auto& c = columns_[attr];
        return c.dictionary[c.codes[row]];
    }
    std::uint32_t code(TupleId row, AttrIndex attr) const { return columns_[attr].codes[row]; }
    const Column& column(AttrIndex attr) const { return columns_.at(attr); }

    std::optional<AttrIndex> find_attribute(std::string_view name) const;
    /// Throws RelationError(unknown_attribute).
    AttrIndex attribute(std::string_view name) const;
    AttrSet attributes(std::initializer_list<std::string_view> names) const;
    AttrSet all_attributes() const { return AttrSet::first_n(schema_.size()); }

    /// Throws RelationError(unknown_attribute) if any index is outside the schema.
    void check(AttrSet attrs) const;

    std::vector<std::vector<std::string>> rows() const;

    /// Copy with one cell replaced.
    Relation with_cell(TupleId row, AttrIndex attr, const std::string& value) const;

private:
    std::vector<std::string> schema_;
    std::vector<Column> columns_;
    std::size_t rows_ = 0;
};

/// RFC 4180 parsing: quoted fields, doubled quotes, embedded delimiters and
/// newlines, CRLF or LF line ends. Without a header, attributes are named
/// A1..An. Blank lines are skipped.
Relation parse_relation(std::string_view text, CsvOptions options = {});
Relation load_relation(const std::filesystem::path& path, CsvOptions options = {});

/// Serializes with minimal quoting; parse_relation(to_csv(r)) reproduces r.
std::string to_csv(const Relation& r, char delimiter = ',');

}  // namespace ofd
