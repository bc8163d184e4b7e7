#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "batchcode/gf.hpp"
#include "batchcode/strong.hpp"

namespace batchcode {

// Vectors of GF(q)^n are indexed base q with the first coordinate most
// significant, so index order is lexicographic order.
int point_count(std::uint32_t q, int n);
int point_index(const GFVector& v);
GFVector point_vector(std::uint32_t q, int n, int index);

// Subspace of GF(q)^n given by an independent basis of dimension >= 1.
class Subspace {
public:
    Subspace(std::uint32_t q, int n, std::vector<GFVector> basis);

    std::uint32_t modulus() const { return q_; }
    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<GFVector>& basis() const { return basis_; }

    // Sorted point indices of the subspace (q^dim of them).
    std::vector<int> points() const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::uint32_t q_;
    int n_;
    std::vector<GFVector> basis_;
};

class SubspaceFamily {
public:
    SubspaceFamily(std::uint32_t q, int n, std::vector<Subspace> members);

    std::uint32_t modulus() const { return q_; }
    int ambient() const { return n_; }
    int size() const { return static_cast<int>(members_.size()); }
    const std::vector<Subspace>& members() const { return members_; }
    const Subspace& operator[](int j) const { return members_[j]; }

    friend bool operator==(const SubspaceFamily&, const SubspaceFamily&) = default;

private:
    std::uint32_t q_;
    int n_;
    std::vector<Subspace> members_;
};

// All one-dimensional subspaces <v> of GF(2)^n.
SubspaceFamily all_binary_lines(int n);

struct AADVerdict {
    bool holds = true;
    // "dimension", "skew", "unequal-dimensions", "overlap" or "coset".
    std::string reason;
    int member = -1;     // subspace whose coset (or which) violates
    int other = -1;      // second subspace for "skew"
    int coset_rep = -1;  // point index of the coset representative
    int count = 0;       // members met
};

// Every pair of members meets only in zero.
bool check_pairwise_skew(const SubspaceFamily& family);

// Equal dimension d, n >= 2d+1, pairwise skew, and every coset v+U_i with
// v outside U_i meets at most L members. Throws on unequal dimensions.
AADVerdict check_aad(const SubspaceFamily& family, int L);

// Every member meets at most L-1 other members nontrivially, and every coset
// v+U_i with v outside U_i meets at most L members.
AADVerdict check_aad_star(const SubspaceFamily& family, int L);

// Smallest L >= 1 passing check_aad_star (L = family size always does).
int min_L_star(const SubspaceFamily& family);

struct Coset {
    int member = 0;
    int rep = 0;              // smallest point index in the coset
    std::vector<int> points;  // sorted point indices
};

struct CosetCode {
    GFMatrix matrix{2, 1, 1};  // [I_{q^n} | M] over GF(2)
    int k = 0;                 // q^n
    int parity = 0;            // N, the number of cosets
    std::vector<Coset> cosets;  // ordered by (member, rep)
    ServiceCollection services;  // (v, {C} + C\{v}) for v in C
    int m = 0;
    int L = 0;
    int t = 0;
};

// Point-set cosets of each member, ordered by (member, representative).
std::vector<Coset> enumerate_cosets(const SubspaceFamily& family);

// Binary coset code with its simple services; L is min_L_star(family).
// Throws std::invalid_argument when q^n > 64.
CosetCode build_coset_code(const SubspaceFamily& family);

}  // namespace batchcode
