// PTNS file format and CLI-facing transform specs.
//
// PTNS layout (all integers little-endian, independent of host endianness):
//   bytes 0-3   magic "PTNS"
//   byte  4     version, currently 1
//   byte  5     scalar code: 0 = real f64, 1 = complex f64 (re, im pairs)
//   byte  6     order p (>= 2)
//   byte  7     padding (zero), so the dims start 8-aligned
//   8 ..        p x u64 dims
//   then        entries as f64 in flat storage order (first index fastest)
//
// Transform specs are the strings accepted by the CLI's --transform flag:
//   identity | dft | dft-unitary | dct | random-unitary:<seed> |
//   random:<seed> | file:<sidecar.json>
// where the sidecar is {"matrices": ["t3.ptns", ...]}, one square order-2
// PTNS per trailing axis, paths relative to the sidecar.
#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ltensor/error.hpp"
#include "ltensor/tensor.hpp"
#include "ltensor/transforms.hpp"

namespace ltensor {

namespace detail {

inline void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& buf, double d) { put_u64(buf, std::bit_cast<std::uint64_t>(d)); }

inline std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

inline double get_f64(const unsigned char* p) { return std::bit_cast<double>(get_u64(p)); }

} // namespace detail

/// Writes a tensor. as_real = true uses the compact real encoding and errors
/// if any entry has a nonzero imaginary part.
inline void write_ptns(const std::string& path, const Tensor& a, bool as_real = false) {
    if (as_real)
        for (Index i = 0; i < a.size(); ++i)
            if (a[i].imag() != 0.0)
                throw IoError(path + ": refusing to write as real, entry at flat index " +
                              std::to_string(i) + " has imaginary part");

    std::string buf;
    buf.reserve(8 + 8 * static_cast<std::size_t>(a.order()) +
                static_cast<std::size_t>(a.size()) * (as_real ? 8 : 16));
    buf += "PTNS";
    buf.push_back(1);
    buf.push_back(as_real ? 0 : 1);
    buf.push_back(static_cast<char>(a.order()));
    buf.push_back(0);
    for (Index n : a.shape()) detail::put_u64(buf, static_cast<std::uint64_t>(n));
    for (Index i = 0; i < a.size(); ++i) {
        detail::put_f64(buf, a[i].real());
        if (!as_real) detail::put_f64(buf, a[i].imag());
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path + ": cannot open for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError(path + ": write failed");
}

inline Tensor read_ptns(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data());

    if (buf.size() < 8 || buf.compare(0, 4, "PTNS") != 0)
        throw IoError(path + ": not a PTNS file (bad magic)");
    if (p[4] != 1)
        throw IoError(path + ": unsupported version " + std::to_string(int(p[4])));
    const int scalar_code = p[5];
    if (scalar_code != 0 && scalar_code != 1)
        throw IoError(path + ": unknown scalar code " + std::to_string(scalar_code));
    const int order = p[6];
    if (order < 2) throw IoError(path + ": order " + std::to_string(order) + " below 2");
    if (buf.size() < 8 + 8 * static_cast<std::size_t>(order))
        throw IoError(path + ": truncated header");

    Shape shape(static_cast<std::size_t>(order));
    std::uint64_t count = 1;
    for (int k = 0; k < order; ++k) {
        const std::uint64_t n = detail::get_u64(p + 8 + 8 * k);
        if (n < 1 || n > (1u << 26))
            throw IoError(path + ": axis " + std::to_string(k) + " has size " + std::to_string(n));
        if (count > (std::uint64_t{1} << 40) / n) throw IoError(path + ": element count overflows");
        count *= n;
        shape[static_cast<std::size_t>(k)] = static_cast<Index>(n);
    }

    const std::size_t header = 8 + 8 * static_cast<std::size_t>(order);
    const std::size_t expect = header + count * 8 * (scalar_code == 0 ? 1 : 2);
    if (buf.size() != expect)
        throw IoError(path + ": file is " + std::to_string(buf.size()) + " bytes, header declares " +
                      std::to_string(expect));

    std::vector<Complex> data(count);
    const unsigned char* q = p + header;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double re = detail::get_f64(q);
        q += 8;
        double im = 0.0;
        if (scalar_code == 1) {
            im = detail::get_f64(q);
            q += 8;
        }
        data[i] = Complex{re, im};
    }
    return Tensor(std::move(shape), std::move(data));
}

/// Reads an order-2 PTNS file into a matrix (used for file-backed transforms).
inline Matrix read_ptns_matrix(const std::string& path) {
    const Tensor t = read_ptns(path);
    if (t.order() != 2) throw IoError(path + ": expected an order-2 tensor, got order " +
                                      std::to_string(t.order()));
    return matrix_slice(t, 0);
}

/// Builds a transform from a CLI spec string for the given trailing shape.
inline Transform parse_transform_spec(const std::string& spec, const Shape& trailing) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto parse_seed = [&](const std::string& s) -> std::uint64_t {
        try {
            std::size_t used = 0;
            const std::uint64_t v = std::stoull(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw TransformError("transform spec '" + spec + "': bad seed '" + s + "'");
        }
    };

    if (spec == "identity") return Transform::identity(trailing);
    if (spec == "dft") return Transform::dft(trailing);
    if (spec == "dft-unitary") return Transform::dft_unitary(trailing);
    if (spec == "dct") return Transform::dct(trailing);
    if (head == "random-unitary" && colon != std::string::npos)
        return Transform::random_unitary(trailing, parse_seed(tail));
    if (head == "random" && colon != std::string::npos)
        return Transform::random_invertible(trailing, parse_seed(tail));
    if (head == "file" && colon != std::string::npos) {
        std::ifstream in(tail);
        if (!in) throw IoError(tail + ": cannot open transform sidecar");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw IoError(tail + ": invalid JSON (" + e.what() + ")");
        }
        if (!j.contains("matrices") || !j["matrices"].is_array())
            throw IoError(tail + ": sidecar must contain a \"matrices\" array");
        const auto dir = std::filesystem::path(tail).parent_path();
        std::vector<Matrix> mats;
        for (const auto& entry : j["matrices"]) {
            if (!entry.is_string()) throw IoError(tail + ": matrix entries must be path strings");
            mats.push_back(read_ptns_matrix((dir / entry.get<std::string>()).string()));
        }
        return Transform::from_matrices("file:" + tail, trailing, std::move(mats));
    }
    throw TransformError("unknown transform spec '" + spec +
                         "' (expected identity|dft|dft-unitary|dct|random-unitary:<seed>|"
                         "random:<seed>|file:<path>)");
}

} // namespace ltensor
