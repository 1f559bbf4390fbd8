#pragma once

#include <stdexcept>
#include <string>

namespace ofd {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OntologyError : public Error {
public:
    enum class Code {
        malformed,
        duplicate_class,
        empty_synonyms,
        unknown_parent,
        self_parent,
        cycle,
        unknown_class,
    };

    OntologyError(Code code, const std::string& what) : Error(what), code_(code) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

class RelationError : public Error {
public:
    enum class Code {
        malformed,
        empty_input,
        ragged_row,
        duplicate_attribute,
        unknown_attribute,
        too_many_attributes,
    };

    RelationError(Code code, const std::string& what) : Error(what), code_(code) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

class InferenceError : public Error {
public:
    using Error::Error;
};

/// Invalid user configuration (CLI flags, discovery parameters).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace ofd
