#include <ovdiam/errors.hh>
#include <ovdiam/ov.hh>

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

using std::string;
using std::uint64_t;
using std::vector;

namespace ovdiam
{
    auto OvInstance::full_mask() const -> uint64_t
    {
        return d >= 64 ? ~uint64_t{0} : ((uint64_t{1} << d) - 1);
    }

    auto OvInstance::row_string(int v) const -> string
    {
        string s(d, '0');
        for (int c = 0; c < d; ++c)
            if (bit(v, c))
                s[c] = '1';
        return s;
    }

    auto make_instance(int k, const vector<string> & rows) -> OvInstance
    {
        OvInstance result;
        result.k = k;
        result.d = rows.empty() ? 0 : static_cast<int>(rows.front().size());
        if (result.d > max_dimension)
            throw ParseError{"dimension above " + std::to_string(max_dimension) + " is not supported"};
        for (auto & r : rows) {
            if (static_cast<int>(r.size()) != result.d)
                throw ParseError{"row length mismatch"};
            uint64_t mask = 0;
            for (int c = 0; c < result.d; ++c) {
                if (r[c] == '1')
                    mask |= uint64_t{1} << c;
                else if (r[c] != '0')
                    throw ParseError{"rows may only contain 0 and 1"};
            }
            result.vectors.push_back(mask);
        }
        return result;
    }

    auto is_orthogonal(const OvInstance & inst, std::span<const int> indices) -> bool
    {
        uint64_t acc = inst.full_mask();
        for (int i : indices)
            acc &= inst.vectors.at(i);
        return acc == 0;
    }

    auto ind(const OvInstance & inst, std::span<const int> indices) -> int
    {
        uint64_t acc = inst.full_mask();
        for (int i : indices)
            acc &= inst.vectors.at(i);
        if (acc == 0)
            throw NoCommonCoordinate{"vectors have no common coordinate"};
        return std::countr_zero(acc);
    }

    namespace
    {
        // walks nondecreasing tuples, pruning once the running AND is zero
        auto search(const OvInstance & inst, int j, int from, uint64_t acc, vector<int> & chosen) -> bool
        {
            if (static_cast<int>(chosen.size()) == j)
                return acc == 0;
            for (int i = from; i < inst.n(); ++i) {
                chosen.push_back(i);
                if (search(inst, j, i, acc & inst.vectors[i], chosen))
                    return true;
                chosen.pop_back();
            }
            return false;
        }

        auto subset_zero_with(const vector<uint64_t> & existing, uint64_t fresh, uint64_t full, int max_others) -> bool
        {
            if ((fresh & full) == 0)
                return true;
            // subsets of distinct existing vectors, of size at most max_others, ANDed with fresh
            auto rec = [&](auto & self, int from, int left, uint64_t acc) -> bool {
                if (acc == 0)
                    return true;
                if (left == 0)
                    return false;
                for (int i = from; i < static_cast<int>(existing.size()); ++i)
                    if (self(self, i + 1, left - 1, acc & existing[i]))
                        return true;
                return false;
            };
            return rec(rec, 0, max_others, fresh & full);
        }

        auto random_vector(std::mt19937_64 & rng, int d, double density) -> uint64_t
        {
            std::bernoulli_distribution coin(density);
            uint64_t v = 0;
            for (int c = 0; c < d; ++c)
                if (coin(rng))
                    v |= uint64_t{1} << c;
            return v;
        }

        auto check_shape(int k, int d, int n) -> void
        {
            if (k < 2)
                throw GenerationFailed{"k must be at least 2"};
            if (d < 1 || d > max_dimension)
                throw GenerationFailed{"d out of range"};
            if (n < 1)
                throw GenerationFailed{"n must be positive"};
        }
    }

    auto solve_kov_bruteforce(const OvInstance & inst, int j) -> std::optional<OvWitness>
    {
        if (j < 1)
            return std::nullopt;
        vector<int> chosen;
        if (search(inst, j, 0, inst.full_mask(), chosen))
            return OvWitness{chosen};
        return std::nullopt;
    }

    auto has_orthogonal_upto(const OvInstance & inst, int j) -> bool
    {
        // with repetition allowed, an orthogonal tuple of size <= j exists iff one of size exactly j does
        return j >= 1 && inst.n() > 0 && solve_kov_bruteforce(inst, j).has_value();
    }

    auto generate_no_instance(int k, int d, int n, uint64_t seed, const GeneratorOptions & opts) -> OvInstance
    {
        check_shape(k, d, n);
        OvInstance inst;
        inst.k = k;
        inst.d = d;
        std::mt19937_64 rng(seed);
        vector<uint64_t> chosen;
        for (int i = 0; i + 1 < n; ++i) {
            bool placed = false;
            for (int attempt = 0; attempt < opts.max_retries && ! placed; ++attempt) {
                auto v = random_vector(rng, d, opts.density);
                if (! subset_zero_with(chosen, v, inst.full_mask(), k - 1)) {
                    chosen.push_back(v);
                    placed = true;
                }
            }
            if (! placed)
                throw GenerationFailed{"could not sample a vector keeping the instance free of orthogonal tuples"};
        }
        chosen.push_back(inst.full_mask());
        inst.vectors = std::move(chosen);
        return inst;
    }

    auto generate_yes_instance(int k, int d, int n, uint64_t seed, const GeneratorOptions & opts)
        -> std::pair<OvInstance, OvWitness>
    {
        check_shape(k, d, n);
        if (d < k)
            throw GenerationFailed{"a planted orthogonal k-tuple without orthogonal (k-1)-tuples needs d >= k"};
        if (n < k)
            throw GenerationFailed{"a planted k-tuple needs n >= k"};

        OvInstance inst;
        inst.k = k;
        inst.d = d;
        OvWitness witness;
        for (int i = 0; i < k; ++i) {
            uint64_t v = inst.full_mask();
            for (int c = i; c < d; c += k)
                v &= ~(uint64_t{1} << c);
            inst.vectors.push_back(v);
            witness.indices.push_back(i);
        }
        if (n > k)
            inst.vectors.push_back(inst.full_mask());

        std::mt19937_64 rng(seed);
        while (inst.n() < n) {
            bool placed = false;
            for (int attempt = 0; attempt < opts.max_retries && ! placed; ++attempt) {
                auto v = random_vector(rng, d, opts.density);
                if (! subset_zero_with(inst.vectors, v, inst.full_mask(), k - 2)) {
                    inst.vectors.push_back(v);
                    placed = true;
                }
            }
            if (! placed)
                throw GenerationFailed{"could not sample padding free of orthogonal (k-1)-tuples"};
        }
        return {inst, witness};
    }

    auto shuffle_instance(const OvInstance & inst, OvWitness & witness, uint64_t seed) -> OvInstance
    {
        std::mt19937_64 rng(seed);
        vector<int> vec_perm(inst.n()), coord_perm(inst.d);
        std::iota(vec_perm.begin(), vec_perm.end(), 0);
        std::iota(coord_perm.begin(), coord_perm.end(), 0);
        std::shuffle(vec_perm.begin(), vec_perm.end(), rng);
        std::shuffle(coord_perm.begin(), coord_perm.end(), rng);

        OvInstance out;
        out.k = inst.k;
        out.d = inst.d;
        out.vectors.assign(inst.n(), 0);
        for (int v = 0; v < inst.n(); ++v) {
            uint64_t m = 0;
            for (int c = 0; c < inst.d; ++c)
                if (inst.bit(v, c))
                    m |= uint64_t{1} << coord_perm[c];
            out.vectors[vec_perm[v]] = m;
        }
        for (auto & i : witness.indices)
            i = vec_perm[i];
        return out;
    }

    auto write_instance(std::ostream & os, const OvInstance & inst) -> void
    {
        os << inst.k << ' ' << inst.d << ' ' << inst.n() << '\n';
        for (int v = 0; v < inst.n(); ++v)
            os << inst.row_string(v) << '\n';
    }

    auto read_instance(std::istream & is) -> OvInstance
    {
        string header;
        if (! std::getline(is, header))
            throw ParseError{"missing header line"};
        std::istringstream hs(header);
        long k = 0, d = 0, n = 0;
        if (! (hs >> k >> d >> n))
            throw ParseError{"header must be 'k d n'"};
        string extra;
        if (hs >> extra)
            throw ParseError{"trailing data on header line"};
        if (k < 2 || d < 1 || n < 1)
            throw ParseError{"header values out of range"};
        if (d > max_dimension)
            throw ParseError{"dimension above " + std::to_string(max_dimension) + " is not supported"};

        vector<string> rows;
        string line;
        while (static_cast<long>(rows.size()) < n && std::getline(is, line)) {
            if (! line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            if (static_cast<long>(line.size()) != d)
                throw ParseError{"vector line " + std::to_string(rows.size() + 2) + " has wrong length"};
            rows.push_back(line);
        }
        if (static_cast<long>(rows.size()) != n)
            throw ParseError{"expected " + std::to_string(n) + " vector lines"};
        while (std::getline(is, line))
            if (line.find_first_not_of(" \t\r") != string::npos)
                throw ParseError{"unexpected data after the last vector"};
        auto inst = make_instance(static_cast<int>(k), rows);
        inst.d = static_cast<int>(d);
        return inst;
    }

    auto read_instance_file(const string & path) -> OvInstance
    {
        std::ifstream f(path);
        if (! f)
            throw ParseError{"cannot open " + path};
        return read_instance(f);
    }

    auto write_instance_file(const string & path, const OvInstance & inst) -> void
    {
        std::ofstream f(path);
        if (! f)
            throw ParseError{"cannot write " + path};
        write_instance(f, inst);
    }
}
