#include "nacksim/codec.hpp"

#include <cstring>

namespace nacksim {

const char* to_string(ContentType t) {
    switch (t) {
        case ContentType::Data: return "DATA";
        case ContentType::Key: return "KEY";
        case ContentType::Cnack: return "CNACK";
        case ContentType::BlmFltr: return "BLM-FLTR";
    }
    return "?";
}

const char* to_string(FnackReason r) {
    switch (r) {
        case FnackReason::NoRoute: return "NO_ROUTE";
        case FnackReason::Congestion: return "CONGESTION";
    }
    return "?";
}

const Name& packet_name(const Packet& p) {
    return std::visit([](const auto& v) -> const Name& { return v.name; }, p);
}

namespace {

void put_u8(Bytes& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v));
}

void put_u32(Bytes& out, std::uint32_t v) {
    for (int i = 3; i >= 0; --i)
        out.push_back(static_cast<char>(v >> (8 * i)));
}

void put_u64(Bytes& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<char>(v >> (8 * i)));
}

void put_i64(Bytes& out, std::int64_t v) { put_u64(out, static_cast<std::uint64_t>(v)); }

void put_digest(Bytes& out, const Digest& d) {
    out.append(reinterpret_cast<const char*>(d.data()), d.size());
}

struct Reader {
    const Bytes& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size())
            throw CodecError("truncated packet");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = (static_cast<std::uint8_t>(buf[pos]) << 8) |
                          static_cast<std::uint8_t>(buf[pos + 1]);
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v = (v << 8) | static_cast<std::uint8_t>(buf[pos + i]);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v = (v << 8) | static_cast<std::uint8_t>(buf[pos + i]);
        pos += 8;
        return v;
    }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    Bytes bytes(std::size_t n) {
        need(n);
        Bytes v = buf.substr(pos, n);
        pos += n;
        return v;
    }
    Digest digest() {
        need(32);
        Digest d{};
        std::memcpy(d.data(), buf.data() + pos, 32);
        pos += 32;
        return d;
    }
    bool flag() {
        std::uint8_t v = u8();
        if (v > 1)
            throw CodecError("bad presence flag");
        return v == 1;
    }
};

void encode_name_into(Bytes& out, const Name& name) {
    if (name.components.size() > 0xffff)
        throw CodecError("name too deep");
    put_u16(out, static_cast<std::uint16_t>(name.components.size()));
    for (const auto& c : name.components) {
        put_u32(out, static_cast<std::uint32_t>(c.size()));
        out.append(c);
    }
    put_u8(out, name.implicit_digest ? 1 : 0);
    if (name.implicit_digest)
        put_digest(out, *name.implicit_digest);
}

Name decode_name(Reader& r) {
    Name name;
    std::uint16_t count = r.u16();
    name.components.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
        std::uint32_t len = r.u32();
        name.components.push_back(r.bytes(len));
    }
    if (r.flag())
        name.implicit_digest = r.digest();
    return name;
}

Bytes encode_content(const ContentObject& p, bool zero_signature, std::size_t max_segment) {
    Bytes out;
    put_u8(out, 'C');
    encode_name_into(out, p.name);
    put_u8(out, static_cast<std::uint8_t>(p.content_type));
    put_u32(out, static_cast<std::uint32_t>(p.payload.size()));
    out.append(p.payload);
    put_u64(out, static_cast<std::uint64_t>(p.freshness));
    put_i64(out, p.timestamp);
    put_u8(out, p.expiration ? 1 : 0);
    if (p.expiration)
        put_i64(out, *p.expiration);
    put_u32(out, static_cast<std::uint32_t>(p.producer_key.size()));
    out.append(p.producer_key);
    if (zero_signature)
        out.append(32, '\0');
    else
        put_digest(out, p.signature);
    if (p.content_type == ContentType::BlmFltr && out.size() > max_segment)
        throw CodecError("BLM-FLTR encoding exceeds max segment size (" +
                         std::to_string(out.size()) + " > " + std::to_string(max_segment) + ")");
    return out;
}

Bytes encode_fnack(const FNack& p, bool zero_tag) {
    Bytes out;
    put_u8(out, 'F');
    encode_name_into(out, p.name);
    put_u8(out, static_cast<std::uint8_t>(p.reason));
    put_i64(out, p.timestamp);
    if (zero_tag)
        out.append(32, '\0');
    else
        put_digest(out, p.auth_tag);
    return out;
}

} // namespace

Bytes encode_name(const Name& name) {
    Bytes out;
    encode_name_into(out, name);
    return out;
}

Bytes encode(const Interest& p) {
    Bytes out;
    put_u8(out, 'I');
    encode_name_into(out, p.name);
    put_u8(out, p.key_digest ? 1 : 0);
    if (p.key_digest)
        put_digest(out, *p.key_digest);
    put_u8(out, p.scn_hash ? 1 : 0);
    if (p.scn_hash)
        put_digest(out, *p.scn_hash);
    put_u64(out, static_cast<std::uint64_t>(p.lifetime));
    put_u32(out, p.origin_face);
    return out;
}

Bytes encode(const ContentObject& p, std::size_t max_segment) {
    return encode_content(p, false, max_segment);
}

Bytes encode(const FNack& p) { return encode_fnack(p, false); }

Bytes encode(const Packet& p, std::size_t max_segment) {
    return std::visit(
        [&](const auto& v) -> Bytes {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ContentObject>)
                return encode(v, max_segment);
            else
                return encode(v);
        },
        p);
}

Bytes signing_input(const ContentObject& p) {
    return encode_content(p, true, std::size_t(-1));
}

Bytes mac_input(const FNack& p) { return encode_fnack(p, true); }

Packet decode(const Bytes& wire) {
    Reader r{wire};
    std::uint8_t kind = r.u8();
    Packet out;
    switch (kind) {
        case 'I': {
            Interest p;
            p.name = decode_name(r);
            if (r.flag())
                p.key_digest = r.digest();
            if (r.flag())
                p.scn_hash = r.digest();
            p.lifetime = static_cast<SimTime>(r.u64());
            p.origin_face = r.u32();
            out = std::move(p);
            break;
        }
        case 'C': {
            ContentObject p;
            p.name = decode_name(r);
            std::uint8_t t = r.u8();
            if (t > static_cast<std::uint8_t>(ContentType::BlmFltr))
                throw CodecError("bad content type");
            p.content_type = static_cast<ContentType>(t);
            p.payload = r.bytes(r.u32());
            p.freshness = static_cast<SimTime>(r.u64());
            p.timestamp = r.i64();
            if (r.flag())
                p.expiration = r.i64();
            p.producer_key = r.bytes(r.u32());
            p.signature = r.digest();
            out = std::move(p);
            break;
        }
        case 'F': {
            FNack p;
            p.name = decode_name(r);
            std::uint8_t reason = r.u8();
            if (reason > static_cast<std::uint8_t>(FnackReason::Congestion))
                throw CodecError("bad fnack reason");
            p.reason = static_cast<FnackReason>(reason);
            p.timestamp = r.i64();
            p.auth_tag = r.digest();
            out = std::move(p);
            break;
        }
        default:
            throw CodecError("unknown packet kind");
    }
    if (r.pos != wire.size())
        throw CodecError("trailing bytes after packet");
    return out;
}

} // namespace nacksim
