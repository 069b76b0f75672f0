#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace fs = std::filesystem;

namespace orka {

namespace {

constexpr char kMagic[4] = {'O', 'R', 'K', 'A'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint64_t kMaxElements = 1ull << 32;  // sanity cap before allocation

std::uint64_t read_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64_le(std::istream& in) {
    std::uint64_t bits = read_u64_le(in);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

void write_f64_le(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    write_u64_le(out, bits);
}

FileFormat sniff(const std::string& path, FileFormat fmt) {
    if (fmt != FileFormat::kAuto) return fmt;
    std::ifstream in(path, std::ios::binary);
    char head[4] = {};
    if (in.read(head, 4) && std::memcmp(head, kMagic, 4) == 0) return FileFormat::kBinary;
    return FileFormat::kCsv;
}

FileFormat format_for_write(const std::string& path, FileFormat fmt) {
    if (fmt != FileFormat::kAuto) return fmt;
    const auto ext = fs::path(path).extension().string();
    return (ext == ".bin" || ext == ".orka") ? FileFormat::kBinary : FileFormat::kCsv;
}

Matrix read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char head[4];
    std::uint8_t ver = 0;
    in.read(head, 4);
    in.read(reinterpret_cast<char*>(&ver), 1);
    if (!in || std::memcmp(head, kMagic, 4) != 0)
        throw IoError(path + ": not a matrix file (bad magic)");
    if (ver != kVersion)
        throw IoError(path + ": unsupported format version " + std::to_string(ver));

    const std::uint64_t ndims = read_u64_le(in);
    if (!in || ndims < 2 || ndims > 3)
        throw IoError(path + ": expected 2 or 3 dimensions");
    std::uint64_t dims[3] = {0, 0, 1};
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < ndims; ++i) {
        dims[i] = read_u64_le(in);
        if (!in || dims[i] == 0 || count > kMaxElements / std::max<std::uint64_t>(dims[i], 1))
            throw IoError(path + ": implausible dimensions");
        count *= dims[i];
    }

    Matrix m;
    if (ndims == 2) {
        // (rows, cols), row-major on disk
        m = Matrix(dims[0], dims[1]);
        for (std::uint64_t i = 0; i < dims[0]; ++i)
            for (std::uint64_t k = 0; k < dims[1]; ++k) m(i, k) = read_f64_le(in);
    } else {
        // (frames, frame_rows, frame_cols); pixel (x, y) of frame t lands at
        // column t, index x + frame_rows * y
        m = Matrix(dims[1] * dims[2], dims[0]);
        m.set_frame_shape(dims[1], dims[2]);
        for (std::uint64_t t = 0; t < dims[0]; ++t) {
            auto col = m.column(t);
            for (std::uint64_t x = 0; x < dims[1]; ++x)
                for (std::uint64_t y = 0; y < dims[2]; ++y)
                    col[x + dims[1] * y] = read_f64_le(in);
        }
    }
    if (!in) throw IoError(path + ": truncated file");
    return m;
}

void write_binary(const Matrix& m, std::ostream& out) {
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&kVersion), 1);
    const bool clip = m.frame_cols() > 1;
    if (clip) {
        write_u64_le(out, 3);
        write_u64_le(out, m.cols());
        write_u64_le(out, m.frame_rows());
        write_u64_le(out, m.frame_cols());
        for (std::size_t t = 0; t < m.cols(); ++t) {
            auto col = m.column(t);
            for (std::size_t x = 0; x < m.frame_rows(); ++x)
                for (std::size_t y = 0; y < m.frame_cols(); ++y)
                    write_f64_le(out, col[x + m.frame_rows() * y]);
        }
    } else {
        write_u64_le(out, 2);
        write_u64_le(out, m.rows());
        write_u64_le(out, m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) write_f64_le(out, m(i, k));
    }
}

Matrix read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc())
                throw IoError(path + ": bad number in row " + std::to_string(rows.size() + 1));
            row.push_back(v);
            p = next;
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            if (p < end) {
                if (*p != ',') throw IoError(path + ": expected comma");
                ++p;
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError(path + ": ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError(path + ": empty file");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rows[i][k];
    return m;
}

void write_csv(const Matrix& m, std::ostream& out) {
    char buf[64];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, k));
            if (k) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

// temp-file-and-rename so a crashing writer never leaves a partial artifact
void atomic_write(const std::string& path, const std::function<void(std::ostream&)>& body,
                  bool binary) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
        if (!out) throw IoError("cannot create " + tmp.string());
        body(out);
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

}  // namespace

Matrix read_matrix(const std::string& path, FileFormat fmt) {
    if (!fs::exists(path)) throw IoError("no such file: " + path);
    return sniff(path, fmt) == FileFormat::kBinary ? read_binary(path) : read_csv(path);
}

void write_matrix(const Matrix& m, const std::string& path, FileFormat fmt) {
    const FileFormat f = format_for_write(path, fmt);
    atomic_write(path, [&](std::ostream& out) {
        f == FileFormat::kBinary ? write_binary(m, out) : write_csv(m, out);
    }, f == FileFormat::kBinary);
}

void write_shifts_csv(const ShiftVector& lambda, const std::string& path) {
    atomic_write(path, [&](std::ostream& out) {
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            out << lambda.x[j];
            if (lambda.dims == 2) out << ',' << lambda.y[j];
            out << '\n';
        }
    }, false);
}

ShiftVector read_shifts_csv(const std::string& path, int dims) {
    if (dims != 1 && dims != 2) throw IoError("shift dims must be 1 or 2");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    ShiftVector lam;
    lam.dims = dims;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        long x = 0, y = 0;
        char comma = 0;
        if (!(row >> x)) throw IoError(path + ": bad shift row");
        if (dims == 2 && !(row >> comma >> y)) throw IoError(path + ": missing y shift");
        lam.x.push_back(x);
        if (dims == 2) lam.y.push_back(y);
    }
    if (lam.x.empty()) throw IoError(path + ": empty shift file");
    return lam;
}

Matrix read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5") throw IoError(path + ": only binary PGM (P5) is supported");

    auto next_token = [&]() -> long {
        // skip whitespace and '#' comment lines
        int ch;
        while ((ch = in.peek()) != EOF) {
            if (std::isspace(ch)) { in.get(); continue; }
            if (ch == '#') { std::string junk; std::getline(in, junk); continue; }
            break;
        }
        long v;
        if (!(in >> v)) throw IoError(path + ": malformed PGM header");
        return v;
    };

    const long width = next_token();
    const long height = next_token();
    const long maxval = next_token();
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255)
        throw IoError(path + ": unsupported PGM header");
    in.get();  // single whitespace after maxval

    std::vector<unsigned char> raw(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) throw IoError(path + ": truncated PGM data");

    // pixel (x, y): x runs along the image row (width), y down the rows
    Matrix frame(static_cast<std::size_t>(width) * height, 1);
    frame.set_frame_shape(static_cast<std::size_t>(width), static_cast<std::size_t>(height));
    for (long y = 0; y < height; ++y)
        for (long x = 0; x < width; ++x)
            frame.data()[x + width * y] =
                static_cast<double>(raw[static_cast<std::size_t>(y) * width + x]) / maxval;
    return frame;
}

Matrix read_frame_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const auto ext = e.path().extension().string();
        if (ext == ".pgm" || ext == ".bin" || ext == ".csv" || ext == ".orka")
            files.push_back(e.path());
    }
    if (files.empty()) throw IoError("no frame files in " + dir);
    std::sort(files.begin(), files.end());

    Matrix clip;
    for (std::size_t t = 0; t < files.size(); ++t) {
        const std::string p = files[t].string();
        Matrix frame = files[t].extension() == ".pgm" ? read_pgm(p) : read_matrix(p);
        if (frame.cols() != 1) throw IoError(p + ": frame files must hold one column");
        if (t == 0) {
            clip = Matrix(frame.rows(), files.size());
            clip.set_frame_shape(frame.frame_rows(), frame.frame_cols());
        } else if (frame.rows() != clip.rows() ||
                   frame.frame_rows() != clip.frame_rows() ||
                   frame.frame_cols() != clip.frame_cols()) {
            throw IoError(p + ": frame shape differs from the first frame");
        }
        std::copy(frame.data(), frame.data() + frame.rows(), clip.column(t).begin());
    }
    return clip;
}

void write_text(const std::string& text, const std::string& path) {
    atomic_write(path, [&](std::ostream& out) { out << text; }, false);
}

}  // namespace orka
