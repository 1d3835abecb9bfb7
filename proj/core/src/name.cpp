#include "nacksim/name.hpp"

namespace nacksim {

namespace {

void append_escaped(std::string& out, const Bytes& comp) {
    static const char* hexd = "0123456789abcdef";
    for (unsigned char c : comp) {
        if (c == '/' || c == '%' || c < 0x20 || c > 0x7e) {
            out.push_back('%');
            out.push_back(hexd[c >> 4]);
            out.push_back(hexd[c & 0xf]);
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
}

} // namespace

Name Name::with(Bytes component) const {
    Name n = *this;
    n.implicit_digest.reset();
    n.components.push_back(std::move(component));
    return n;
}

std::string Name::to_uri() const {
    std::string out;
    for (const auto& c : components) {
        out.push_back('/');
        append_escaped(out, c);
    }
    if (out.empty())
        out = "/";
    return out;
}

Name parse_name(const std::string& text) {
    if (text.empty() || text[0] != '/')
        throw ParseError("name must begin with '/': \"" + text + "\"");
    Name name;
    std::size_t pos = 1;
    while (pos <= text.size()) {
        std::size_t next = text.find('/', pos);
        std::size_t end = (next == std::string::npos) ? text.size() : next;
        if (end == pos)
            throw ParseError("empty name component in \"" + text + "\"");
        name.components.emplace_back(text.substr(pos, end - pos));
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    if (name.components.empty())
        throw ParseError("name has no components: \"" + text + "\"");
    return name;
}

bool is_prefix_of(const Name& prefix, const Name& name) {
    if (prefix.components.size() > name.components.size())
        return false;
    for (std::size_t i = 0; i < prefix.components.size(); ++i)
        if (prefix.components[i] != name.components[i])
            return false;
    return true;
}

} // namespace nacksim
