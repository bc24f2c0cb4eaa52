#include "riesz/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "riesz/error.hpp"

namespace riesz::io {

namespace {

constexpr std::array<unsigned char, 4> kMagic{'R', 'L', 'Z', '1'};

static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::vector<unsigned char>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xffu));
}

class Reader {
public:
    explicit Reader(std::span<const unsigned char> b) : bytes_(b) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes_[pos_ + i]} << (8 * i);
        pos_ += 4;
        return v;
    }

    double f64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }

    bool at_end() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) const {
        if (pos_ + n > bytes_.size()) throw ParseError("binary function truncated");
    }

    std::span<const unsigned char> bytes_;
    std::size_t pos_ = 4;
};

GroupSpec group_from_orders(const std::vector<std::size_t>& orders) {
    try {
        return make_group(orders);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("invalid group in function file: ") + e.what());
    }
}

} // namespace

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string to_json(const LatticeFunction& f) {
    nlohmann::json j;
    j["orders"] = f.group().orders();
    std::vector<double> re, im;
    re.reserve(f.size());
    im.reserve(f.size());
    for (const auto& v : f.values()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j.dump();
}

LatticeFunction from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("orders") || !j.contains("re") || !j.contains("im")) {
        throw ParseError("function JSON needs \"orders\", \"re\" and \"im\"");
    }
    std::vector<std::size_t> orders;
    std::vector<double> re, im;
    try {
        orders = j.at("orders").get<std::vector<std::size_t>>();
        re = j.at("re").get<std::vector<double>>();
        im = j.at("im").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("function JSON has wrong field types: ") + e.what());
    }
    GroupSpec g = group_from_orders(orders);
    if (re.size() != g.size() || im.size() != g.size()) {
        throw ParseError("function JSON: value count does not match group size");
    }
    std::vector<Complex> vals(g.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = Complex(re[i], im[i]);
    LatticeFunction f(std::move(g), std::move(vals));
    if (!f.all_finite()) throw ParseError("function JSON contains non-finite values");
    return f;
}

std::vector<unsigned char> to_binary(const LatticeFunction& f) {
    std::vector<unsigned char> out(kMagic.begin(), kMagic.end());
    const auto& orders = f.group().orders();
    out.reserve(8 + 4 * orders.size() + 16 * f.size());
    put_u32(out, static_cast<std::uint32_t>(orders.size()));
    for (std::size_t m : orders) put_u32(out, static_cast<std::uint32_t>(m));
    for (const auto& v : f.values()) {
        put_f64(out, v.real());
        put_f64(out, v.imag());
    }
    return out;
}

LatticeFunction from_binary(std::span<const unsigned char> bytes) {
    if (bytes.size() < 4 || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw ParseError("binary function: bad magic");
    }
    Reader r(bytes);
    const std::uint32_t n = r.u32();
    if (n == 0 || n > 64) throw ParseError("binary function: implausible dimension count");
    std::vector<std::size_t> orders(n);
    for (auto& m : orders) m = r.u32();
    GroupSpec g = group_from_orders(orders);
    if ((bytes.size() - 8 - 4 * std::size_t{n}) / 16 != g.size()) {
        throw ParseError("binary function: payload size does not match group");
    }
    std::vector<Complex> vals(g.size());
    for (auto& v : vals) {
        const double re = r.f64();
        v = Complex(re, r.f64());
    }
    if (!r.at_end()) throw ParseError("binary function: trailing bytes");
    LatticeFunction f(std::move(g), std::move(vals));
    if (!f.all_finite()) throw ParseError("binary function contains non-finite values");
    return f;
}

void write_function(const std::filesystem::path& path, const LatticeFunction& f, Format format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (format == Format::Json) {
        os << to_json(f) << '\n';
    } else {
        const auto bytes = to_binary(f);
        os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

LatticeFunction read_function(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (bytes.size() >= 4 && std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        return from_binary(bytes);
    }
    return from_json(std::string(bytes.begin(), bytes.end()));
}

} // namespace riesz::io
