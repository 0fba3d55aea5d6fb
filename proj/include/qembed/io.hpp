#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qembed/ansatz.hpp"
#include "qembed/embedding_matrix.hpp"

namespace qembed {

namespace detail {

template <typename T>
void write_le(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!in) throw std::runtime_error("truncated file");
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

inline void write_words(std::ostream& out, const std::vector<std::string>& words) {
    for (const auto& w : words) out << w << '\n';
}

inline std::vector<std::string> read_words(std::istream& in, size_t n) {
    std::vector<std::string> words;
    words.reserve(n);
    std::string line;
    for (size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("truncated word list");
        words.push_back(line);
    }
    return words;
}

} // namespace detail

// One embedding role plus its word list, as stored on disk.
struct EmbeddingModel {
    std::vector<std::string> words;
    EmbeddingTable table;
    EmbeddingMode mode = EmbeddingMode::complex;
};

// Binary format: magic "CWV1", u32 vocab, u32 dim, u8 mode, f32 re block
// (vocab x dim), f32 im block, newline-terminated word list.
inline void save_embeddings_binary(const EmbeddingModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write("CWV1", 4);
    detail::write_le<uint32_t>(out, static_cast<uint32_t>(m.table.rows()));
    detail::write_le<uint32_t>(out, static_cast<uint32_t>(m.table.dim()));
    detail::write_le<uint8_t>(out, static_cast<uint8_t>(m.mode));
    for (size_t r = 0; r < m.table.rows(); ++r)
        for (double v : m.table.re(r)) detail::write_le<float>(out, static_cast<float>(v));
    for (size_t r = 0; r < m.table.rows(); ++r)
        for (double v : m.table.im(r)) detail::write_le<float>(out, static_cast<float>(v));
    detail::write_words(out, m.words);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline EmbeddingModel load_embeddings_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "CWV1", 4) != 0)
        throw std::runtime_error("bad magic in embedding file: " + path);
    const auto vocab = detail::read_le<uint32_t>(in);
    const auto dim = detail::read_le<uint32_t>(in);
    const auto mode = detail::read_le<uint8_t>(in);
    if (mode > 1) throw std::runtime_error("bad mode byte in embedding file");
    EmbeddingModel m;
    m.mode = static_cast<EmbeddingMode>(mode);
    m.table = EmbeddingTable(vocab, dim);
    for (size_t r = 0; r < vocab; ++r)
        for (auto& v : m.table.re(r)) v = detail::read_le<float>(in);
    for (size_t r = 0; r < vocab; ++r)
        for (auto& v : m.table.im(r)) v = detail::read_le<float>(in);
    m.words = detail::read_words(in, vocab);
    return m;
}

// Text format: header "count dim mode", then per word: the token followed
// by d real parts and (complex mode) d imaginary parts.
inline void save_embeddings_text(const EmbeddingModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const bool cplx = m.mode == EmbeddingMode::complex;
    out << m.table.rows() << ' ' << m.table.dim() << ' '
        << (cplx ? "complex" : "real") << '\n';
    char buf[64];
    for (size_t r = 0; r < m.table.rows(); ++r) {
        out << m.words[r];
        for (double v : m.table.re(r)) {
            std::snprintf(buf, sizeof(buf), " %.9g", v);
            out << buf;
        }
        if (cplx)
            for (double v : m.table.im(r)) {
                std::snprintf(buf, sizeof(buf), " %.9g", v);
                out << buf;
            }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline EmbeddingModel load_embeddings_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    size_t vocab, dim;
    std::string mode_str;
    if (!(in >> vocab >> dim >> mode_str))
        throw std::runtime_error("bad header in text embedding file: " + path);
    EmbeddingModel m;
    if (mode_str == "complex")
        m.mode = EmbeddingMode::complex;
    else if (mode_str == "real")
        m.mode = EmbeddingMode::real;
    else
        throw std::runtime_error("bad mode in text embedding file: " + mode_str);
    m.table = EmbeddingTable(vocab, dim);
    const bool cplx = m.mode == EmbeddingMode::complex;
    for (size_t r = 0; r < vocab; ++r) {
        std::string word;
        if (!(in >> word)) throw std::runtime_error("truncated text embedding file");
        m.words.push_back(word);
        for (auto& v : m.table.re(r))
            if (!(in >> v)) throw std::runtime_error("truncated text embedding file");
        if (cplx)
            for (auto& v : m.table.im(r))
                if (!(in >> v)) throw std::runtime_error("truncated text embedding file");
    }
    return m;
}

// PQC parameter file: magic "QPF1", ansatz id, u32 qubits, u32 layers,
// u32 vocab, per-word f64 angle arrays in id order, then the word list.
struct PqcParamFile {
    std::string ansatz_id;
    uint32_t n_qubits = 0;
    uint32_t n_layers = 0;
    std::vector<std::string> words;
    std::vector<std::vector<double>> angles; // one array per word
};

inline void save_pqc_params(const PqcParamFile& f, const std::string& path) {
    if (f.words.size() != f.angles.size())
        throw std::invalid_argument("pqc param file: words/angles size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write("QPF1", 4);
    detail::write_le<uint8_t>(out, static_cast<uint8_t>(f.ansatz_id.size()));
    out.write(f.ansatz_id.data(), static_cast<std::streamsize>(f.ansatz_id.size()));
    detail::write_le<uint32_t>(out, f.n_qubits);
    detail::write_le<uint32_t>(out, f.n_layers);
    detail::write_le<uint32_t>(out, static_cast<uint32_t>(f.words.size()));
    for (const auto& a : f.angles)
        for (double v : a) detail::write_le<double>(out, v);
    detail::write_words(out, f.words);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline PqcParamFile load_pqc_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "QPF1", 4) != 0)
        throw std::runtime_error("bad magic in pqc param file: " + path);
    PqcParamFile f;
    const auto idlen = detail::read_le<uint8_t>(in);
    f.ansatz_id.resize(idlen);
    in.read(f.ansatz_id.data(), idlen);
    if (!in) throw std::runtime_error("truncated file");
    f.n_qubits = detail::read_le<uint32_t>(in);
    f.n_layers = detail::read_le<uint32_t>(in);
    const auto vocab = detail::read_le<uint32_t>(in);
    const AnsatzSpec spec(f.ansatz_id, static_cast<int>(f.n_qubits),
                          static_cast<int>(f.n_layers));
    f.angles.resize(vocab);
    for (auto& a : f.angles) {
        a.resize(spec.param_count());
        for (auto& v : a) v = detail::read_le<double>(in);
    }
    f.words = detail::read_words(in, vocab);
    return f;
}

// Peeks at the 4-byte magic to dispatch model loading.
inline std::string file_magic(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    return std::string(magic, 4);
}

} // namespace qembed
