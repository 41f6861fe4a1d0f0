#include "torp/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace torp {

namespace {

constexpr char kMagic[4] = {'T', 'R', 'P', 'M'};

void put_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64_le(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void put_f64_le(std::ostream& out, double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, 8);
    put_u64_le(out, bits);
}

double get_f64_le(std::istream& in) {
    const std::uint64_t bits = get_u64_le(in);
    double x;
    std::memcpy(&x, &bits, 8);
    return x;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

const std::string& require(const std::map<std::string, std::string>& kv,
                           const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("manifest: missing key " + key);
    return it->second;
}

}  // namespace

void save_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(kMagic, 4);
    put_u64_le(out, static_cast<std::uint64_t>(m.rows()));
    put_u64_le(out, static_cast<std::uint64_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) put_f64_le(out, m(i, j));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

DenseMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("bad magic in " + path.string());
    const std::uint64_t rows = get_u64_le(in);
    const std::uint64_t cols = get_u64_le(in);
    if (!in) throw std::runtime_error("truncated header in " + path.string());
    constexpr std::uint64_t kMaxIndex =
        static_cast<std::uint64_t>(std::numeric_limits<Index>::max());
    if (rows == 0 || cols == 0 || rows > kMaxIndex || cols > kMaxIndex ||
        cols > std::numeric_limits<std::uint64_t>::max() / 8 / std::max<std::uint64_t>(rows, 1))
        throw std::runtime_error("dimension overflow in " + path.string());
    DenseMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) m(i, j) = get_f64_le(in);
    if (!in) throw std::runtime_error("truncated payload in " + path.string());
    return m;
}

void save_instance(const std::filesystem::path& dir, const ProblemInstance& inst) {
    std::filesystem::create_directories(dir);
    save_matrix(dir / "m.mat", inst.m_star);
    save_matrix(dir / "l.mat", inst.l_star);
    save_matrix(dir / "c.mat", inst.c_star);
    save_matrix(dir / "n.mat", inst.n_star);

    std::ofstream out(dir / "manifest");
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    const InstanceParams& p = inst.params;
    out << "d=" << p.d << "\n"
        << "n=" << p.n << "\n"
        << "r=" << p.r << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", p.alpha);
    out << "alpha=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", p.outlier_scale);
    out << "outlier_scale=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", p.noise_sigma);
    out << "noise_sigma=" << buf << "\n";
    out << "noise_model=" << (p.noise_model == NoiseModel::gaussian_iid ? "gaussian_iid" : "none")
        << "\n";
    out << "inlier_model="
        << (p.inlier_model == InlierModel::unit_sphere ? "unit_sphere" : "gaussian") << "\n";
    out << "seed=" << p.seed << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", inst.measured_mu);
    out << "measured_mu=" << buf << "\n";
    out << "support=";
    bool first = true;
    for (Index j : inst.true_support) {
        if (!first) out << ",";
        out << j;
        first = false;
    }
    out << "\n";
    if (!out) throw std::runtime_error("write failed: manifest in " + dir.string());
}

ProblemInstance load_instance(const std::filesystem::path& dir) {
    ProblemInstance inst;
    inst.m_star = load_matrix(dir / "m.mat");
    inst.l_star = load_matrix(dir / "l.mat");
    inst.c_star = load_matrix(dir / "c.mat");
    inst.n_star = load_matrix(dir / "n.mat");

    const auto kv = read_key_values(dir / "manifest");
    InstanceParams p;
    p.d = static_cast<Index>(std::stoll(require(kv, "d")));
    p.n = static_cast<Index>(std::stoll(require(kv, "n")));
    p.r = static_cast<Index>(std::stoll(require(kv, "r")));
    p.alpha = std::stod(require(kv, "alpha"));
    p.outlier_scale = std::stod(require(kv, "outlier_scale"));
    p.noise_sigma = std::stod(require(kv, "noise_sigma"));
    p.noise_model = require(kv, "noise_model") == "gaussian_iid" ? NoiseModel::gaussian_iid
                                                                 : NoiseModel::none;
    p.inlier_model = require(kv, "inlier_model") == "unit_sphere" ? InlierModel::unit_sphere
                                                                  : InlierModel::gaussian;
    p.seed = static_cast<std::uint64_t>(std::stoull(require(kv, "seed")));
    inst.params = p;
    inst.measured_mu = std::stod(require(kv, "measured_mu"));

    std::vector<Index> support;
    std::stringstream ss(require(kv, "support"));
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) support.push_back(static_cast<Index>(std::stoll(tok)));
    inst.true_support = ColumnIndexSet(std::move(support));

    if (inst.m_star.rows() != p.d || inst.m_star.cols() != p.n)
        throw std::runtime_error("instance dimensions disagree with manifest");
    return inst;
}

}  // namespace torp
