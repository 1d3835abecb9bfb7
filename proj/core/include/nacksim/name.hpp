#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nacksim/bytes.hpp"

namespace nacksim {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hierarchical content name: ordered byte-string components, with an optional
// implicit digest of the carrying content object. The digest never takes part
// in prefix matching.
struct Name {
    std::vector<Bytes> components;
    std::optional<Digest> implicit_digest;

    Name() = default;
    explicit Name(std::vector<Bytes> comps) : components(std::move(comps)) {}

    bool empty() const { return components.empty(); }
    std::size_t depth() const { return components.size(); }

    Name with(Bytes component) const;

    // Path-like form, components escaped so that '/' delimits unambiguously.
    std::string to_uri() const;
    // Map/table key; prefix ranges of keys are contiguous under std::less.
    std::string to_key() const { return to_uri(); }

    bool operator==(const Name& o) const {
        return components == o.components && implicit_digest == o.implicit_digest;
    }
    bool operator!=(const Name& o) const { return !(*this == o); }
};

// Splits "/a/b/c" into components. Rejects missing leading '/', empty
// components and empty names. No unescaping is applied.
Name parse_name(const std::string& text);

// True iff every component of `prefix` equals the corresponding leading
// component of `name`. Digest components are ignored.
bool is_prefix_of(const Name& prefix, const Name& name);

} // namespace nacksim
