#include "hopfcert/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "hopfcert/error.hpp"
#include "hopfcert/group_cache.hpp"
#include "hopfcert/parallel.hpp"

namespace hopfcert {

std::string to_string(Family f) {
    switch (f) {
        case Family::SL2: return "sl2";
        case Family::PSL2: return "psl2";
        case Family::SL3: return "sl3";
        case Family::Sz: return "sz";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    std::string lower;
    for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "sl2") return Family::SL2;
    if (lower == "psl2") return Family::PSL2;
    if (lower == "sl3") return Family::SL3;
    if (lower == "sz" || lower == "2b2") return Family::Sz;
    throw InvalidArgument("unknown group family '" + s + "'");
}

unsigned family_dimension(Family f) {
    switch (f) {
        case Family::SL2:
        case Family::PSL2: return 2;
        case Family::SL3: return 3;
        case Family::Sz: return 4;
    }
    return 0;
}

std::uint64_t closed_form_order(Family f, std::uint64_t q) {
    const auto pm = prime_power(q);
    if (!pm) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    switch (f) {
        case Family::SL2: return q * (q * q - 1);
        case Family::PSL2: return q * (q * q - 1) / (q % 2 == 1 ? 2 : 1);
        case Family::SL3: return q * q * q * (q * q - 1) * (q * q * q - 1);
        case Family::Sz:
            if (pm->first != 2 || pm->second % 2 == 0 || pm->second < 3) {
                throw InvalidArgument("Sz(q) needs q = 2^(2n+1) with n >= 1, got " + std::to_string(q));
            }
            return q * q * (q - 1) * (q * q + 1);
    }
    return 0;
}

Matrix Matrix::identity(unsigned dim) {
    Matrix m;
    m.dim = static_cast<std::uint8_t>(dim);
    for (unsigned i = 0; i < dim; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_codes(unsigned dim, const std::vector<Code>& codes) {
    if (dim < 2 || dim > 4 || codes.size() != dim * dim) {
        throw InvalidArgument("matrix needs dim in {2,3,4} and dim^2 entries");
    }
    Matrix m;
    m.dim = static_cast<std::uint8_t>(dim);
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (codes[i] > 255) throw InvalidArgument("matrix entry code out of range");
        m.entries[i] = static_cast<std::uint8_t>(codes[i]);
    }
    return m;
}

std::vector<Code> Matrix::codes() const {
    return std::vector<Code>(entries.begin(), entries.begin() + dim * dim);
}

namespace mat {

Matrix mul(const FiniteField& f, const Matrix& a, const Matrix& b) {
    Matrix r;
    r.dim = a.dim;
    const unsigned n = a.dim;
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            Code s = 0;
            for (unsigned k = 0; k < n; ++k) {
                s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
            }
            r.set(i, j, s);
        }
    }
    return r;
}

Matrix neg(const FiniteField& f, const Matrix& a) {
    Matrix r = a;
    for (unsigned i = 0; i < a.dim * a.dim; ++i) r.entries[i] = static_cast<std::uint8_t>(f.neg(a.entries[i]));
    return r;
}

Matrix transpose(const Matrix& a) {
    Matrix r;
    r.dim = a.dim;
    for (unsigned i = 0; i < a.dim; ++i) {
        for (unsigned j = 0; j < a.dim; ++j) r.set(i, j, a.at(j, i));
    }
    return r;
}

namespace {

// Determinant of the minor of a with row skip_r and column skip_c removed.
Code minor_det(const FiniteField& f, const Matrix& a, unsigned skip_r, unsigned skip_c) {
    Matrix sub;
    sub.dim = static_cast<std::uint8_t>(a.dim - 1);
    unsigned ri = 0;
    for (unsigned i = 0; i < a.dim; ++i) {
        if (i == skip_r) continue;
        unsigned ci = 0;
        for (unsigned j = 0; j < a.dim; ++j) {
            if (j == skip_c) continue;
            sub.set(ri, ci, a.at(i, j));
            ++ci;
        }
        ++ri;
    }
    return det(f, sub);
}

}  // namespace

Code det(const FiniteField& f, const Matrix& a) {
    if (a.dim == 1) return a.at(0, 0);
    if (a.dim == 2) return f.sub(f.mul(a.at(0, 0), a.at(1, 1)), f.mul(a.at(0, 1), a.at(1, 0)));
    Code s = 0;
    for (unsigned j = 0; j < a.dim; ++j) {
        const Code term = f.mul(a.at(0, j), minor_det(f, a, 0, j));
        s = (j % 2 == 0) ? f.add(s, term) : f.sub(s, term);
    }
    return s;
}

Matrix inverse_det1(const FiniteField& f, const Matrix& a) {
    Matrix r;
    r.dim = a.dim;
    if (a.dim == 2) {
        r.set(0, 0, a.at(1, 1));
        r.set(0, 1, f.neg(a.at(0, 1)));
        r.set(1, 0, f.neg(a.at(1, 0)));
        r.set(1, 1, a.at(0, 0));
        return r;
    }
    for (unsigned i = 0; i < a.dim; ++i) {
        for (unsigned j = 0; j < a.dim; ++j) {
            const Code c = minor_det(f, a, j, i);
            r.set(i, j, (i + j) % 2 == 0 ? c : f.neg(c));
        }
    }
    return r;
}

Code trace(const FiniteField& f, const Matrix& a) {
    Code s = 0;
    for (unsigned i = 0; i < a.dim; ++i) s = f.add(s, a.at(i, i));
    return s;
}

unsigned rank_minus_identity(const FiniteField& f, const Matrix& a) {
    const unsigned n = a.dim;
    std::vector<std::vector<Code>> rows(n, std::vector<Code>(n));
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) rows[i][j] = i == j ? f.sub(a.at(i, j), 1) : a.at(i, j);
    }
    unsigned rank = 0;
    for (unsigned col = 0; col < n && rank < n; ++col) {
        unsigned pivot = rank;
        while (pivot < n && rows[pivot][col] == 0) ++pivot;
        if (pivot == n) continue;
        std::swap(rows[pivot], rows[rank]);
        const Code inv = f.inv(rows[rank][col]);
        for (unsigned i = 0; i < n; ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const Code factor = f.mul(rows[i][col], inv);
            for (unsigned j = col; j < n; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

Matrix pow(const FiniteField& f, const Matrix& a, std::uint64_t k) {
    Matrix result = Matrix::identity(a.dim);
    Matrix base = a;
    while (k != 0) {
        if (k & 1U) result = mul(f, result, base);
        base = mul(f, base, base);
        k >>= 1U;
    }
    return result;
}

}  // namespace mat

GroupKey encode(const Matrix& m, Code q) {
    GroupKey key = 0;
    for (unsigned i = 0; i < static_cast<unsigned>(m.dim) * m.dim; ++i) key = key * q + m.entries[i];
    return key;
}

Matrix decode(GroupKey key, unsigned dim, Code q) {
    Matrix m;
    m.dim = static_cast<std::uint8_t>(dim);
    for (unsigned i = dim * dim; i-- > 0;) {
        m.entries[i] = static_cast<std::uint8_t>(key % q);
        key /= q;
    }
    return m;
}

std::string to_string(JordanType t) {
    switch (t) {
        case JordanType::Trivial: return "(1)";
        case JordanType::Type21: return "(2,1)";
        case JordanType::Type3: return "(3)";
    }
    return "?";
}

namespace suzuki {

Matrix u(const FiniteField& f, Code a, Code b) {
    const Code ta = suzuki_theta(f, a);
    const Code tb = suzuki_theta(f, b);
    Matrix m = Matrix::identity(4);
    m.set(1, 0, a);
    m.set(2, 0, f.add(f.mul(a, ta), b));
    m.set(2, 1, ta);
    m.set(3, 0, f.add(f.add(f.mul(f.mul(a, a), ta), f.mul(a, b)), tb));
    m.set(3, 1, b);
    m.set(3, 2, a);
    return m;
}

Matrix t(const FiniteField& f, Code kappa) {
    if (kappa == 0) throw InvalidArgument("t_kappa needs kappa != 0");
    const Code a1 = suzuki_theta_inverse(f, f.mul(kappa, suzuki_theta(f, kappa)));
    const Code a2 = suzuki_theta_inverse(f, kappa);
    Matrix m;
    m.dim = 4;
    m.set(0, 0, a1);
    m.set(1, 1, a2);
    m.set(2, 2, f.inv(a2));
    m.set(3, 3, f.inv(a1));
    return m;
}

Matrix tau() {
    Matrix m;
    m.dim = 4;
    for (unsigned i = 0; i < 4; ++i) m.set(i, 3 - i, 1);
    return m;
}

}  // namespace suzuki

namespace {

struct KeyHash {
    std::size_t operator()(const Matrix& m) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned i = 0; i < static_cast<unsigned>(m.dim) * m.dim; ++i) {
            h ^= m.entries[i];
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

std::vector<Matrix> closure(const FiniteField& f, const std::vector<Matrix>& gens, std::uint64_t expected) {
    std::unordered_set<Matrix, KeyHash> seen;
    seen.reserve(expected + expected / 4);
    std::vector<Matrix> out;
    out.reserve(expected);
    std::queue<Matrix> frontier;
    const Matrix id = Matrix::identity(gens.front().dim);
    seen.insert(id);
    frontier.push(id);
    while (!frontier.empty()) {
        const Matrix x = frontier.front();
        frontier.pop();
        out.push_back(x);
        for (const Matrix& g : gens) {
            Matrix y = mat::mul(f, x, g);
            if (seen.insert(y).second) {
                frontier.push(y);
                if (seen.size() > expected) {
                    throw InvariantViolation("generator closure exceeds the expected group order");
                }
            }
        }
    }
    return out;
}

Matrix transvection(unsigned dim, unsigned i, unsigned j, Code lambda) {
    Matrix m = Matrix::identity(dim);
    m.set(i, j, lambda);
    return m;
}

std::vector<Matrix> enumerate_sl2(const FiniteField& f, bool projective) {
    const Code q = f.order();
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(q) * (q * q - 1));
    auto push = [&](Code a, Code b, Code c, Code d) {
        Matrix m = Matrix::from_codes(2, {a, b, c, d});
        if (projective) {
            const Matrix n = mat::neg(f, m);
            if (n < m) m = n;
        }
        out.push_back(m);
    };
    for (Code a = 0; a < q; ++a) {
        for (Code b = 0; b < q; ++b) {
            for (Code c = 0; c < q; ++c) {
                if (a != 0) {
                    push(a, b, c, f.mul(f.add(1, f.mul(b, c)), f.inv(a)));
                } else if (b != 0 && c == f.neg(f.inv(b))) {
                    for (Code d = 0; d < q; ++d) push(a, b, c, d);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Matrix> enumerate_sl3(const FiniteField& f) {
    std::vector<Matrix> gens;
    Code basis = 1;
    for (unsigned k = 0; k < f.degree(); ++k) {
        for (unsigned i = 0; i < 3; ++i) {
            for (unsigned j = 0; j < 3; ++j) {
                if (i != j) gens.push_back(transvection(3, i, j, basis));
            }
        }
        basis = f.mul(basis, f.generator());
    }
    auto out = closure(f, gens, closed_form_order(Family::SL3, f.order()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Matrix> enumerate_sz_closure(const FiniteField& f) {
    std::vector<Matrix> gens;
    Code basis = 1;
    for (unsigned k = 0; k < f.degree(); ++k) {
        gens.push_back(suzuki::u(f, basis, 0));
        gens.push_back(suzuki::u(f, 0, basis));
        basis = f.mul(basis, f.generator());
    }
    gens.push_back(suzuki::t(f, f.primitive_element()));
    gens.push_back(suzuki::tau());
    auto out = closure(f, gens, closed_form_order(Family::Sz, f.order()));
    std::sort(out.begin(), out.end());
    return out;
}

// Above this order Sz(q) is listed through its Bruhat decomposition, which
// needs no visited-set.
constexpr std::uint64_t kSuzukiClosureLimit = 4'000'000;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

std::vector<Matrix> enumerate_suzuki_bruhat(const FiniteField& f) {
    const Code q = f.order();
    const std::uint64_t expected = closed_form_order(Family::Sz, q);
    std::vector<Matrix> us;
    us.reserve(static_cast<std::size_t>(q) * q);
    for (Code a = 0; a < q; ++a) {
        for (Code b = 0; b < q; ++b) us.push_back(suzuki::u(f, a, b));
    }
    std::vector<Matrix> ts;
    for (Code k = 1; k < q; ++k) ts.push_back(suzuki::t(f, k));
    std::vector<Matrix> out;
    out.reserve(expected);
    const Matrix tau = suzuki::tau();
    std::vector<Matrix> tau_t;
    for (const Matrix& t : ts) tau_t.push_back(mat::mul(f, tau, t));
    for (const Matrix& u : us) {
        for (const Matrix& t : ts) out.push_back(mat::mul(f, u, t));
        for (const Matrix& tt : tau_t) {
            const Matrix utt = mat::mul(f, u, tt);
            for (const Matrix& u2 : us) out.push_back(mat::mul(f, utt, u2));
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw InvariantViolation("Bruhat listing of Sz(q) produced a repeated element");
    }
    return out;
}

std::vector<Matrix> enumerate_elements(Family family, const FiniteField& f) {
    switch (family) {
        case Family::SL2: return enumerate_sl2(f, false);
        case Family::PSL2: return enumerate_sl2(f, true);
        case Family::SL3: return enumerate_sl3(f);
        case Family::Sz:
            if (closed_form_order(Family::Sz, f.order()) > kSuzukiClosureLimit) return enumerate_suzuki_bruhat(f);
            return enumerate_sz_closure(f);
    }
    return {};
}

std::shared_ptr<const FiniteGroup> FiniteGroup::build(Family family, std::uint64_t q, const GroupOptions& opts) {
    const std::uint64_t expected = closed_form_order(family, q);
    if (expected > opts.max_order) {
        throw BoundExceeded(to_string(family) + "(" + std::to_string(q) + ") has order " + std::to_string(expected) +
                            ", above the enumeration bound " + std::to_string(opts.max_order));
    }
    if (q > 256) {
        throw BoundExceeded("matrix groups are limited to fields of order <= 256");
    }
    auto field = FiniteField::of_order(q);
    std::vector<Matrix> elements;
    bool from_cache = false;
    if (!opts.cache_dir.empty()) {
        if (auto cached = load_group_cache(opts.cache_dir, family, *field)) {
            elements = std::move(*cached);
            from_cache = true;
        }
    }
    if (!from_cache) elements = enumerate_elements(family, *field);
    if (elements.size() != expected) {
        throw InvariantViolation(to_string(family) + "(" + std::to_string(q) + ") enumerated " +
                                 std::to_string(elements.size()) + " elements, closed formula gives " +
                                 std::to_string(expected));
    }
    if (!from_cache && !opts.cache_dir.empty()) {
        write_group_cache(opts.cache_dir, family, *field, elements);
    }
    return std::shared_ptr<const FiniteGroup>(new FiniteGroup(family, std::move(field), std::move(elements)));
}

FiniteGroup::FiniteGroup(Family family, std::shared_ptr<const FiniteField> field, std::vector<Matrix> elements)
    : family_(family), field_(std::move(field)), elements_(std::move(elements)) {
    const auto id = find(Matrix::identity(dim()));
    if (!id) throw InvariantViolation("identity missing from enumerated group");
    identity_ = *id;
    order_divisors_ = prime_factors(elements_.size());
    inverse_.resize(elements_.size());
    parallel::for_chunks(elements_.size(), [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) {
            inverse_[i] = lookup(mat::inverse_det1(*field_, elements_[i]));
        }
    });
}

Matrix FiniteGroup::canonical(const Matrix& m) const {
    if (!projective()) return m;
    const Matrix n = mat::neg(*field_, m);
    return n < m ? n : m;
}

std::optional<Index> FiniteGroup::find(const Matrix& m) const {
    if (m.dim != dim()) return std::nullopt;
    const Matrix c = canonical(m);
    const auto it = std::lower_bound(elements_.begin(), elements_.end(), c);
    if (it == elements_.end() || !(*it == c)) return std::nullopt;
    return static_cast<Index>(it - elements_.begin());
}

Index FiniteGroup::index_of(const Matrix& m) const {
    const auto i = find(m);
    if (!i) throw InvalidArgument("matrix is not an element of " + to_string(family_) + "(" + std::to_string(q()) + ")");
    return *i;
}

Index FiniteGroup::lookup(const Matrix& m) const {
    const auto i = find(m);
    if (!i) throw InvariantViolation("product left the enumerated group");
    return *i;
}

Index FiniteGroup::conj(Index g, Index x) const {
    const Matrix gx = mat::mul(*field_, elements_[g], elements_[x]);
    return lookup(mat::mul(*field_, gx, elements_[inverse_[g]]));
}

Index FiniteGroup::pow(Index a, std::uint64_t k) const { return lookup(mat::pow(*field_, elements_[a], k)); }

std::uint64_t FiniteGroup::element_order(Index g) const {
    const Matrix id = canonical(Matrix::identity(dim()));
    auto is_one = [&](std::uint64_t k) { return canonical(mat::pow(*field_, elements_[g], k)) == id; };
    std::uint64_t n = elements_.size();
    for (std::uint64_t prime : order_divisors_) {
        while (n % prime == 0 && is_one(n / prime)) n /= prime;
    }
    return n;
}

bool FiniteGroup::in_P(Index g) const {
    const FiniteField& f = *field_;
    const Matrix& m = elements_[g];
    switch (family_) {
        case Family::SL2: return mat::trace(f, m) == f.from_int(2);
        case Family::PSL2: {
            const Code t = mat::trace(f, m);
            return t == f.from_int(2) || t == f.from_int(-2);
        }
        case Family::SL3: {
            // characteristic polynomial (z-1)^3: trace 3 and principal 2x2 minors summing to 3
            Code minors = 0;
            for (unsigned i = 0; i < 3; ++i) {
                for (unsigned j = i + 1; j < 3; ++j) {
                    minors = f.add(minors, f.sub(f.mul(m.at(i, i), m.at(j, j)), f.mul(m.at(i, j), m.at(j, i))));
                }
            }
            return mat::trace(f, m) == f.from_int(3) && minors == f.from_int(3);
        }
        case Family::Sz: return mat::pow(f, m, 4) == Matrix::identity(4);
    }
    return false;
}

JordanType FiniteGroup::jordan_type(Index g) const {
    if (family_ != Family::SL3 || !in_P(g)) {
        throw InvalidArgument("jordan_type needs a unipotent element of SL3");
    }
    switch (mat::rank_minus_identity(*field_, elements_[g])) {
        case 0: return JordanType::Trivial;
        case 1: return JordanType::Type21;
        default: return JordanType::Type3;
    }
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Index> members, std::vector<Index> generators, std::string label)
    : parent_(std::move(parent)),
      members_(std::move(members)),
      generators_(std::move(generators)),
      label_(std::move(label)) {}

Subgroup Subgroup::generate(GroupPtr parent, std::vector<Index> generators, std::string label) {
    std::vector<Index> members{parent->identity()};
    std::vector<char> seen(parent->order(), 0);
    seen[parent->identity()] = 1;
    for (std::size_t head = 0; head < members.size(); ++head) {
        for (Index g : generators) {
            const Index y = parent->mul(members[head], g);
            if (!seen[y]) {
                seen[y] = 1;
                members.push_back(y);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return Subgroup(std::move(parent), std::move(members), std::move(generators), std::move(label));
}

Subgroup Subgroup::from_members(GroupPtr parent, std::vector<Index> members, std::string label) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!std::binary_search(members.begin(), members.end(), parent->identity())) {
        throw InvalidArgument("subgroup must contain the identity");
    }
    for (Index a : members) {
        if (!std::binary_search(members.begin(), members.end(), parent->inv(a))) {
            throw InvalidArgument("member set is not closed under inverses");
        }
        for (Index b : members) {
            if (!std::binary_search(members.begin(), members.end(), parent->mul(a, b))) {
                throw InvalidArgument("member set is not closed under products");
            }
        }
    }
    std::vector<Index> gens = members;
    return Subgroup(std::move(parent), std::move(members), std::move(gens), std::move(label));
}

bool Subgroup::contains(Index g) const { return std::binary_search(members_.begin(), members_.end(), g); }

bool Subgroup::is_abelian() const {
    for (Index a : generators_) {
        for (Index b : generators_) {
            if (parent_->mul(a, b) != parent_->mul(b, a)) return false;
        }
    }
    return true;
}

std::vector<Index> Subgroup::conjugate_members(Index g) const {
    std::vector<Index> out;
    out.reserve(members_.size());
    for (Index m : members_) out.push_back(parent_->conj(g, m));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> Subgroup::intersection_with_conjugate(Index g) const {
    const auto conj = conjugate_members(g);
    std::vector<Index> out;
    std::set_intersection(members_.begin(), members_.end(), conj.begin(), conj.end(), std::back_inserter(out));
    return out;
}

std::vector<Index> double_coset(const Subgroup& m, Index g) {
    const FiniteGroup& G = m.parent();
    std::vector<Index> out;
    out.reserve(m.order() * m.order());
    for (Index a : m.members()) {
        const Index ag = G.mul(a, g);
        for (Index b : m.members()) out.push_back(G.mul(ag, b));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::vector<Index>> double_cosets(const Subgroup& m) {
    const FiniteGroup& G = m.parent();
    std::vector<char> assigned(G.order(), 0);
    std::vector<std::vector<Index>> out;
    for (Index g = 0; g < G.order(); ++g) {
        if (assigned[g]) continue;
        auto coset = double_coset(m, g);
        for (Index x : coset) assigned[x] = 1;
        out.push_back(std::move(coset));
    }
    return out;
}

SubgroupOrbit conjugate_subgroup_orbit(const Subgroup& m) {
    const FiniteGroup& G = m.parent();
    std::vector<std::vector<Index>> all(G.order());
    parallel::for_chunks(G.order(), [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t g = begin; g < end; ++g) all[g] = m.conjugate_members(static_cast<Index>(g));
    });
    SubgroupOrbit orbit;
    for (const auto& c : all) {
        if (c == m.members()) ++orbit.normalizer_order;
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    orbit.conjugates = std::move(all);
    return orbit;
}

}  // namespace hopfcert
