#include "rootbound/partition.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rootbound {

void Partition::validate() const {
    if (n <= 0) throw std::invalid_argument("partition: n must be positive");
    if (blocks.empty()) throw std::invalid_argument("partition: needs at least one block");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty())
            throw std::invalid_argument("partition: block " + std::to_string(b + 1) + " is empty");
        for (int j : blocks[b]) {
            if (j < 0 || j >= n)
                throw std::invalid_argument("partition: index " + std::to_string(j + 1) +
                                            " in block " + std::to_string(b + 1) +
                                            " is out of range 1.." + std::to_string(n));
            if (seen[static_cast<size_t>(j)])
                throw std::invalid_argument("partition: index " + std::to_string(j + 1) +
                                            " appears twice");
            seen[static_cast<size_t>(j)] = 1;
        }
    }
    for (int j = 0; j < n; ++j)
        if (!seen[static_cast<size_t>(j)])
            throw std::invalid_argument("partition: index " + std::to_string(j + 1) +
                                        " is not covered");
}

Partition Partition::from_blocks_1based(int n, const std::vector<std::vector<int>>& blocks) {
    Partition p;
    p.n = n;
    p.blocks.reserve(blocks.size());
    for (const auto& blk : blocks) {
        std::vector<int> b;
        b.reserve(blk.size());
        for (int j : blk) b.push_back(j - 1);
        p.blocks.push_back(std::move(b));
    }
    p.validate();
    return p;
}

Partition Partition::identity(int n) {
    Partition p;
    p.n = n;
    for (int j = 0; j < n; ++j) p.blocks.push_back({j});
    return p;
}

Partition parse_partition_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("partition JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("blocks"))
        throw std::invalid_argument("partition JSON: expected fields \"n\" and \"blocks\"");
    int n = j.at("n").get<int>();
    auto blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    return Partition::from_blocks_1based(n, blocks);
}

Partition parse_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open partition file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_partition_json(buf.str());
}

Matrix characteristic_matrix(const Partition& p) {
    p.validate();
    Matrix s = Matrix::Zero(p.n, p.size());
    for (int b = 0; b < p.size(); ++b)
        for (int j : p.blocks[static_cast<size_t>(b)]) s(j, b) = 1.0;
    return s;
}

namespace {

void require_partition_matches(const Matrix& c, const Partition& p, const char* what) {
    require_square(c, what);
    require_finite(c, what);
    p.validate();
    if (c.rows() != p.n)
        throw std::invalid_argument(std::string(what) + ": matrix order " +
                                    std::to_string(c.rows()) + " does not match partition n=" +
                                    std::to_string(p.n));
}

}  // namespace

Matrix quotient_matrix(const Matrix& c, const Partition& p) {
    require_partition_matches(c, p, "quotient_matrix");
    const int l = p.size();
    Matrix q(l, l);
    for (int a = 0; a < l; ++a) {
        for (int b = 0; b < l; ++b) {
            double sum = 0.0;
            for (int i : p.blocks[static_cast<size_t>(a)])
                for (int j : p.blocks[static_cast<size_t>(b)]) sum += c(i, j);
            q(a, b) = sum / static_cast<double>(p.blocks[static_cast<size_t>(a)].size());
        }
    }
    return q;
}

double default_equitable_tol(const Matrix& c) { return 1e-9 * (1.0 + max_abs(c)); }

EquitabilityReport is_equitable(const Matrix& c, const Partition& p, double tol) {
    require_partition_matches(c, p, "is_equitable");
    if (tol < 0) throw std::invalid_argument("is_equitable: tol must be >= 0");
    EquitabilityReport rep;
    rep.quotient = quotient_matrix(c, p);
    for (int a = 0; a < p.size(); ++a) {
        for (int b = 0; b < p.size(); ++b) {
            for (int i : p.blocks[static_cast<size_t>(a)]) {
                double sum = 0.0;
                for (int j : p.blocks[static_cast<size_t>(b)]) sum += c(i, j);
                if (std::abs(sum - rep.quotient(a, b)) > tol)
                    rep.violations.push_back({i + 1, b + 1, sum, rep.quotient(a, b)});
            }
        }
    }
    rep.equitable = rep.violations.empty();
    return rep;
}

EquitabilityReport is_equitable(const Matrix& c, const Partition& p) {
    return is_equitable(c, p, default_equitable_tol(c));
}

Vector quotient_vector(const Vector& u, const Partition& p) {
    p.validate();
    if (u.size() != p.n)
        throw std::invalid_argument("quotient_vector: length " + std::to_string(u.size()) +
                                    " does not match partition n=" + std::to_string(p.n));
    Vector q(p.size());
    for (int a = 0; a < p.size(); ++a) {
        double sum = 0.0;
        for (int j : p.blocks[static_cast<size_t>(a)]) sum += u(j);
        q(a) = sum / static_cast<double>(p.blocks[static_cast<size_t>(a)].size());
    }
    return q;
}

bool is_equitable_vector(const Vector& u, const Partition& p, double tol) {
    Vector q = quotient_vector(u, p);
    for (int a = 0; a < p.size(); ++a)
        for (int j : p.blocks[static_cast<size_t>(a)])
            if (std::abs(u(j) - q(a)) > tol) return false;
    return true;
}

}  // namespace rootbound
