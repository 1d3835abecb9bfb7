#pragma once

#include <map>
#include <optional>

#include "nacksim/name.hpp"

namespace nacksim {

// Component trie mapping name prefixes to values, with longest-prefix match.
template <typename T>
class PrefixMap {
public:
    struct Node {
        std::map<Bytes, Node> children;
        std::optional<T> value;
    };

    T& insert(const Name& prefix, T value) {
        Node* node = &root_;
        for (const auto& c : prefix.components)
            node = &node->children[c];
        node->value = std::move(value);
        ++size_;
        return *node->value;
    }

    // Value at the deepest prefix of `name`, or nullptr.
    const T* longest_match(const Name& name) const {
        const Node* node = &root_;
        const T* best = node->value ? &*node->value : nullptr;
        for (const auto& c : name.components) {
            auto it = node->children.find(c);
            if (it == node->children.end())
                break;
            node = &it->second;
            if (node->value)
                best = &*node->value;
        }
        return best;
    }

    const T* exact(const Name& prefix) const {
        const Node* node = &root_;
        for (const auto& c : prefix.components) {
            auto it = node->children.find(c);
            if (it == node->children.end())
                return nullptr;
            node = &it->second;
        }
        return node->value ? &*node->value : nullptr;
    }

    T* exact(const Name& prefix) {
        return const_cast<T*>(static_cast<const PrefixMap*>(this)->exact(prefix));
    }

    bool contains_prefix_of(const Name& name) const { return longest_match(name) != nullptr; }

    std::size_t size() const { return size_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        Name scratch;
        walk(root_, scratch, fn);
    }

private:
    template <typename Fn>
    void walk(const Node& node, Name& scratch, Fn& fn) const {
        if (node.value)
            fn(scratch, *node.value);
        for (const auto& [comp, child] : node.children) {
            scratch.components.push_back(comp);
            walk(child, scratch, fn);
            scratch.components.pop_back();
        }
    }

    Node root_;
    std::size_t size_ = 0;
};

} // namespace nacksim
