#include "batchcode/aad.hpp"

#include <algorithm>
#include <stdexcept>

namespace batchcode {

namespace {

constexpr int kVerifyPoints = 256;
constexpr int kBuildPoints = 64;

void require_points(std::uint32_t q, int n, int limit) {
    double total = 1;
    for (int j = 0; j < n; ++j) total *= q;
    if (n < 1 || total > limit)
        throw std::invalid_argument("q^n = " + std::to_string(static_cast<long long>(total)) + " exceeds the bound " +
                                    std::to_string(limit));
}

int add_points(std::uint32_t q, int n, int a, int b) {
    int out = 0, scale = 1;
    for (int j = 0; j < n; ++j, scale *= static_cast<int>(q)) {
        const int da = a / scale % static_cast<int>(q), db = b / scale % static_cast<int>(q);
        out += (da + db) % static_cast<int>(q) * scale;
    }
    return out;
}

// Membership table per member: inside[j][p] for point index p.
std::vector<std::vector<char>> membership(const SubspaceFamily& family) {
    const int total = point_count(family.modulus(), family.ambient());
    std::vector<std::vector<char>> inside(family.size(), std::vector<char>(total, 0));
    for (int j = 0; j < family.size(); ++j)
        for (int p : family[j].points()) inside[j][p] = 1;
    return inside;
}

bool meets_nontrivially(const std::vector<char>& a, const std::vector<char>& b) {
    for (std::size_t p = 1; p < a.size(); ++p)
        if (a[p] && b[p]) return true;
    return false;
}

// Cosets v+U_i with v outside U_i meet at most L members.
AADVerdict check_cosets(const SubspaceFamily& family, const std::vector<std::vector<char>>& inside, int L) {
    for (const auto& c : enumerate_cosets(family)) {
        if (c.rep == 0) continue;  // the subspace itself
        int met = 0;
        for (int l = 0; l < family.size(); ++l)
            for (int p : c.points)
                if (inside[l][p]) {
                    ++met;
                    break;
                }
        if (met > L) return {false, "coset", c.member, -1, c.rep, met};
    }
    return {};
}

}  // namespace

int point_count(std::uint32_t q, int n) {
    long long total = 1;
    for (int j = 0; j < n; ++j) {
        total *= q;
        if (total > (1 << 20)) throw std::invalid_argument("ambient space too large");
    }
    return static_cast<int>(total);
}

int point_index(const GFVector& v) {
    int idx = 0;
    for (std::size_t j = 0; j < v.size(); ++j) idx = idx * static_cast<int>(v.modulus()) + static_cast<int>(v[j]);
    return idx;
}

GFVector point_vector(std::uint32_t q, int n, int index) {
    std::vector<std::uint32_t> e(n);
    for (int j = n - 1; j >= 0; --j) {
        e[j] = static_cast<std::uint32_t>(index) % q;
        index /= static_cast<int>(q);
    }
    return GFVector(q, std::move(e));
}

Subspace::Subspace(std::uint32_t q, int n, std::vector<GFVector> basis) : q_(q), n_(n), basis_(std::move(basis)) {
    PrimeField field(q);
    if (basis_.empty()) throw std::invalid_argument("subspace needs dimension at least 1");
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& b : basis_) {
        if (b.modulus() != q || static_cast<int>(b.size()) != n)
            throw std::invalid_argument("basis vector does not lie in GF(q)^n");
        rows.emplace_back(b.entries().begin(), b.entries().end());
    }
    if (rank(GFMatrix(q, rows)) != dim()) throw std::invalid_argument("subspace basis is not independent");
}

std::vector<int> Subspace::points() const {
    const int d = dim();
    long long combos = 1;
    for (int j = 0; j < d; ++j) combos *= q_;
    std::vector<int> out;
    std::vector<std::uint32_t> coeff(d, 0);
    for (long long c = 0; c < combos; ++c) {
        long long rest = c;
        for (int j = 0; j < d; ++j) {
            coeff[j] = static_cast<std::uint32_t>(rest % q_);
            rest /= q_;
        }
        int p = 0;
        for (int j = 0; j < d; ++j)
            for (std::uint32_t r = 0; r < coeff[j]; ++r) p = add_points(q_, n_, p, point_index(basis_[j]));
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SubspaceFamily::SubspaceFamily(std::uint32_t q, int n, std::vector<Subspace> members)
    : q_(q), n_(n), members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("family needs at least one subspace");
    for (const auto& u : members_)
        if (u.modulus() != q || u.ambient() != n) throw std::invalid_argument("family members live in different spaces");
}

SubspaceFamily all_binary_lines(int n) {
    std::vector<Subspace> lines;
    for (int p = 1; p < point_count(2, n); ++p) lines.emplace_back(2, n, std::vector<GFVector>{point_vector(2, n, p)});
    return SubspaceFamily(2, n, std::move(lines));
}

std::vector<Coset> enumerate_cosets(const SubspaceFamily& family) {
    const std::uint32_t q = family.modulus();
    const int n = family.ambient();
    require_points(q, n, kVerifyPoints);
    const int total = point_count(q, n);
    std::vector<Coset> out;
    for (int j = 0; j < family.size(); ++j) {
        const auto pts = family[j].points();
        std::vector<char> seen(total, 0);
        for (int v = 0; v < total; ++v) {
            if (seen[v]) continue;
            Coset c{j, v, {}};
            for (int u : pts) c.points.push_back(add_points(q, n, v, u));
            std::sort(c.points.begin(), c.points.end());
            for (int p : c.points) seen[p] = 1;
            c.rep = c.points.front();
            out.push_back(std::move(c));
        }
    }
    return out;
}

bool check_pairwise_skew(const SubspaceFamily& family) {
    require_points(family.modulus(), family.ambient(), kVerifyPoints);
    const auto inside = membership(family);
    for (int i = 0; i < family.size(); ++i)
        for (int j = i + 1; j < family.size(); ++j)
            if (meets_nontrivially(inside[i], inside[j])) return false;
    return true;
}

AADVerdict check_aad(const SubspaceFamily& family, int L) {
    if (L < 1) throw std::invalid_argument("L must be at least 1");
    require_points(family.modulus(), family.ambient(), kVerifyPoints);
    const int d = family[0].dim();
    for (const auto& u : family.members())
        if (u.dim() != d) throw std::invalid_argument("L-AAD needs members of equal dimension");
    if (family.ambient() < 2 * d + 1) return {false, "dimension", -1, -1, -1, 0};
    const auto inside = membership(family);
    for (int i = 0; i < family.size(); ++i)
        for (int j = i + 1; j < family.size(); ++j)
            if (meets_nontrivially(inside[i], inside[j])) return {false, "skew", i, j, -1, 0};
    return check_cosets(family, inside, L);
}

AADVerdict check_aad_star(const SubspaceFamily& family, int L) {
    if (L < 1) throw std::invalid_argument("L must be at least 1");
    require_points(family.modulus(), family.ambient(), kVerifyPoints);
    const auto inside = membership(family);
    for (int i = 0; i < family.size(); ++i) {
        int others = 0;
        for (int j = 0; j < family.size(); ++j)
            if (j != i && meets_nontrivially(inside[i], inside[j])) ++others;
        if (others > L - 1) return {false, "overlap", i, -1, -1, others};
    }
    return check_cosets(family, inside, L);
}

int min_L_star(const SubspaceFamily& family) {
    for (int L = 1; L <= family.size(); ++L)
        if (check_aad_star(family, L).holds) return L;
    throw std::logic_error("no L up to the family size passes");
}

CosetCode build_coset_code(const SubspaceFamily& family) {
    require_points(family.modulus(), family.ambient(), kBuildPoints);
    CosetCode code;
    code.k = point_count(family.modulus(), family.ambient());
    code.cosets = enumerate_cosets(family);
    code.parity = static_cast<int>(code.cosets.size());
    const int n_total = code.k + code.parity;
    if (n_total > static_cast<int>(ColumnSet::kCapacity))
        throw std::invalid_argument("coset code has " + std::to_string(n_total) + " columns; at most " +
                                    std::to_string(ColumnSet::kCapacity) + " supported");
    GFMatrix g(2, code.k, n_total);
    for (int v = 0; v < code.k; ++v) g.set(v, v, 1);
    std::vector<Service> services;
    for (int c = 0; c < code.parity; ++c) {
        const auto& pts = code.cosets[c].points;
        for (int p : pts) g.set(p, code.k + c, 1);
        for (int v : pts) {
            ColumnSet cols;
            cols.insert(code.k + c);
            for (int p : pts)
                if (p != v) cols.insert(p);
            services.push_back({v, cols});
        }
    }
    code.matrix = std::move(g);
    code.services = ServiceCollection(code.k, std::move(services));
    code.m = family.size();
    code.L = min_L_star(family);
    code.t = derive_t(code.m, code.L);
    return code;
}

}  // namespace batchcode
