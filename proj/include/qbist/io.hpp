#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "qbist/measurement.hpp"
#include "qbist/representation.hpp"
#include "qbist/sic_system.hpp"
#include "qbist/types.hpp"

namespace qbist::io {

/// Malformed input file (bad tokens, wrong counts). Distinct from domain
/// validation failures so the command-line tool can map it to its own exit
/// status.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 17 significant digits: enough to reproduce any double bit-exactly on read.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_complex(const Cx& z) {
    return format_double(z.real()) + " " + format_double(z.imag());
}

inline double parse_double(const std::string& tok) {
    double v = 0.0;
    const char* end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw ParseError("not a number: '" + tok + "'");
    return v;
}

inline long long parse_int(const std::string& tok) {
    long long v = 0;
    const char* end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw ParseError("not an integer: '" + tok + "'");
    return v;
}

namespace detail {

/// Whitespace-separated token scanner with contextual error messages.
class TokenReader {
  public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::string next(const std::string& what) {
        std::string tok;
        if (!(in_ >> tok)) throw ParseError("unexpected end of input, expected " + what);
        return tok;
    }

    double next_double(const std::string& what) { return parse_double(next(what)); }
    long long next_int(const std::string& what) { return parse_int(next(what)); }

    bool at_end() {
        in_ >> std::ws;
        return in_.peek() == std::char_traits<char>::eof();
    }

    void expect_end() {
        if (!at_end()) throw ParseError("trailing data after expected end of file");
    }

  private:
    std::istream& in_;
};

inline int read_header_dim(TokenReader& tr) {
    const long long d = tr.next_int("dimension");
    if (d < kMinDim || d > 64) throw ParseError("dimension out of range: " + std::to_string(d));
    return static_cast<int>(d);
}

inline Matrix read_matrix_block(TokenReader& tr, int d) {
    Matrix m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            const double re = tr.next_double("matrix entry (real part)");
            const double im = tr.next_double("matrix entry (imaginary part)");
            m(r, c) = Cx(re, im);
        }
    return m;
}

inline void write_matrix_block(std::ostream& out, const Matrix& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out << format_complex(m(r, c)) << "\n";
}

}  // namespace detail

// --- Fiducial file: line 1 = d, then d lines "re im". ---

inline void write_fiducial(std::ostream& out, const Fiducial& f) {
    out << f.dim() << "\n";
    for (int j = 0; j < f.dim(); ++j) out << format_complex(f.amplitudes()(j)) << "\n";
}

inline Fiducial read_fiducial(std::istream& in) {
    detail::TokenReader tr(in);
    const int d = detail::read_header_dim(tr);
    Vector v(d);
    for (int j = 0; j < d; ++j) {
        const double re = tr.next_double("amplitude (real part)");
        const double im = tr.next_double("amplitude (imaginary part)");
        v(j) = Cx(re, im);
    }
    tr.expect_end();
    return Fiducial(v);
}

// --- SIC file: line 1 = d, then d^2 blocks of d^2 lines "re im" row-major. ---

inline void write_projectors(std::ostream& out, int d, const std::vector<Matrix>& projectors) {
    out << d << "\n";
    for (const Matrix& p : projectors) detail::write_matrix_block(out, p);
}

inline void write_sic(std::ostream& out, const SicSystem& sic) {
    write_projectors(out, sic.dim(), sic.projectors());
}

/// Reads the projector list without verifying it (so a verifier can report
/// what exactly is wrong).
inline std::pair<int, std::vector<Matrix>> read_projectors(std::istream& in) {
    detail::TokenReader tr(in);
    const int d = detail::read_header_dim(tr);
    std::vector<Matrix> projs;
    projs.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d * d; ++i) projs.push_back(detail::read_matrix_block(tr, d));
    tr.expect_end();
    return {d, std::move(projs)};
}

// --- State file: line 1 = d, then d^2 lines "re im" row-major. ---

inline void write_state(std::ostream& out, const Matrix& m) {
    out << m.rows() << "\n";
    detail::write_matrix_block(out, m);
}

inline std::pair<int, Matrix> read_state_matrix(std::istream& in) {
    detail::TokenReader tr(in);
    const int d = detail::read_header_dim(tr);
    Matrix m = detail::read_matrix_block(tr, d);
    tr.expect_end();
    return {d, std::move(m)};
}

// --- Probability file: d^2 bare decimal lines, no header. ---

inline void write_probs(std::ostream& out, const RealVector& p) {
    for (int i = 0; i < p.size(); ++i) out << format_double(p(i)) << "\n";
}

/// Raw read: the only format check is that the count is a perfect square d^2
/// with d >= 2. Domain validation happens in ProbabilityVector.
inline RealVector read_probs_raw(std::istream& in) {
    detail::TokenReader tr(in);
    std::vector<double> vals;
    while (!tr.at_end()) vals.push_back(tr.next_double("probability"));
    const auto n = static_cast<Eigen::Index>(vals.size());
    const int d = static_cast<int>(std::lround(std::sqrt(double(n))));
    if (n < 4 || static_cast<Eigen::Index>(d) * d != n)
        throw ParseError("probability file must hold d^2 values for some d >= 2, got " +
                         std::to_string(vals.size()));
    RealVector p(n);
    for (Eigen::Index i = 0; i < n; ++i) p(i) = vals[static_cast<std::size_t>(i)];
    return p;
}

// --- POVM file: line 1 = "d n", then n blocks of d^2 lines "re im". ---

inline void write_povm(std::ostream& out, const PovmMeasurement& povm) {
    out << povm.dim() << " " << povm.outcomes() << "\n";
    for (const Matrix& f : povm.effects()) detail::write_matrix_block(out, f);
}

inline std::pair<int, std::vector<Matrix>> read_povm_matrices(std::istream& in) {
    detail::TokenReader tr(in);
    const int d = detail::read_header_dim(tr);
    const long long n = tr.next_int("number of effects");
    if (n < 1 || n > 4096) throw ParseError("effect count out of range: " + std::to_string(n));
    std::vector<Matrix> effects;
    effects.reserve(static_cast<std::size_t>(n));
    for (long long j = 0; j < n; ++j) effects.push_back(detail::read_matrix_block(tr, d));
    tr.expect_end();
    return {d, std::move(effects)};
}

// --- Filesystem helpers. ---

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

}  // namespace qbist::io
