#include <ovdiam/errors.hh>
#include <ovdiam/stack.hh>

#include <algorithm>
#include <bit>
#include <sstream>

using std::string;
using std::vector;

namespace ovdiam
{
    namespace
    {
        auto split_ints(const string & s) -> vector<int>
        {
            vector<int> out;
            if (s.empty())
                return out;
            std::stringstream ss(s);
            string item;
            while (std::getline(ss, item, ',')) {
                try {
                    std::size_t used = 0;
                    int v = std::stoi(item, &used);
                    if (used != item.size())
                        throw ParseError{"bad integer '" + item + "'"};
                    out.push_back(v);
                }
                catch (const std::logic_error &) {
                    throw ParseError{"bad integer '" + item + "'"};
                }
            }
            return out;
        }
    }

    Stack::Stack(std::initializer_list<int> items) :
        Stack(vector<int>(items))
    {
    }

    Stack::Stack(const vector<int> & items)
    {
        if (items.size() > max_stack_len)
            throw StackTooLong{"stack longer than supported"};
        for (auto i : items)
            items_[size_++] = static_cast<std::uint16_t>(i);
    }

    auto Stack::popped() const -> Stack
    {
        Stack r = *this;
        if (r.size_ > 0)
            r.items_[--r.size_] = 0;
        return r;
    }

    auto Stack::pushed(int b) const -> Stack
    {
        if (size_ >= max_stack_len)
            throw StackTooLong{"stack longer than supported"};
        Stack r = *this;
        r.items_[r.size_++] = static_cast<std::uint16_t>(b);
        return r;
    }

    auto Stack::prefix(int len) const -> Stack
    {
        Stack r;
        for (int i = 0; i < std::min(len, static_cast<int>(size_)); ++i)
            r.items_[r.size_++] = items_[i];
        return r;
    }

    auto Stack::reversed() const -> Stack
    {
        Stack r = *this;
        std::reverse(r.items_.begin(), r.items_.begin() + size_);
        return r;
    }

    auto Stack::to_vector() const -> vector<int>
    {
        return vector<int>(items_.begin(), items_.begin() + size_);
    }

    auto Stack::operator==(const Stack & other) const -> bool
    {
        return size_ == other.size_ && std::equal(items_.begin(), items_.begin() + size_, other.items_.begin());
    }

    auto Stack::operator<=>(const Stack & other) const -> std::strong_ordering
    {
        return std::lexicographical_compare_three_way(items_.begin(), items_.begin() + size_,
            other.items_.begin(), other.items_.begin() + other.size_);
    }

    auto concat(const Stack & a, const Stack & b) -> Stack
    {
        Stack r = a;
        for (int i = 0; i < b.size(); ++i)
            r = r.pushed(b[i]);
        return r;
    }

    auto encode(const Stack & s) -> string
    {
        string out;
        for (int i = 0; i < s.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(s[i]);
        }
        return out;
    }

    auto decode_stack(const string & s) -> Stack
    {
        auto v = split_ints(s);
        for (auto i : v)
            if (i < 0 || i > 65535)
                throw ParseError{"vector index out of range"};
        return Stack(v);
    }

    CoordArray::CoordArray(std::initializer_list<int> coords) :
        CoordArray(vector<int>(coords))
    {
    }

    CoordArray::CoordArray(const vector<int> & coords)
    {
        if (coords.size() > max_stack_len)
            throw StackTooLong{"coordinate array longer than supported"};
        for (auto c : coords)
            coords_[size_++] = static_cast<std::uint8_t>(c);
    }

    auto CoordArray::operator==(const CoordArray & other) const -> bool
    {
        return size_ == other.size_ && std::equal(coords_.begin(), coords_.begin() + size_, other.coords_.begin());
    }

    auto CoordArray::operator<=>(const CoordArray & other) const -> std::strong_ordering
    {
        return std::lexicographical_compare_three_way(coords_.begin(), coords_.begin() + size_,
            other.coords_.begin(), other.coords_.begin() + other.size_);
    }

    auto encode(const CoordArray & x) -> string
    {
        string out;
        for (int i = 0; i < x.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(x[i] + 1);
        }
        return out;
    }

    auto decode_coords(const string & s) -> CoordArray
    {
        auto v = split_ints(s);
        for (auto & c : v) {
            if (c < 1 || c > max_dimension)
                throw ParseError{"coordinate out of range"};
            --c;
        }
        return CoordArray(v);
    }

    auto satisfies(const Stack & s, const CoordArray & x, const OvInstance & inst) -> bool
    {
        if (s.size() > x.size())
            throw StackTooLong{"stack longer than k-1"};
        unsigned missing = 0;
        for (int h = 0; h < s.size(); ++h) {
            auto v = inst.vectors[s[h]];
            for (int i = 0; i < x.size(); ++i)
                if (! ((v >> x[i]) & 1u))
                    missing |= 1u << i;
            if (std::popcount(missing) > h)
                return false;
        }
        return true;
    }

    namespace
    {
        // chain search: I_h must have k-h elements (h 1-based), be inside I_{h-1},
        // and the h-th vector must be 1 on every position of I_h
        auto chain(const Stack & s, const CoordArray & x, const OvInstance & inst, int h, unsigned prev) -> bool
        {
            if (h == s.size())
                return true;
            int want = x.size() - h;
            auto v = inst.vectors[s[h]];
            for (unsigned sub = prev;; sub = (sub - 1) & prev) {
                if (std::popcount(sub) == want) {
                    bool ok = true;
                    for (int i = 0; i < x.size() && ok; ++i)
                        if (((sub >> i) & 1u) && ! ((v >> x[i]) & 1u))
                            ok = false;
                    if (ok && chain(s, x, inst, h + 1, sub))
                        return true;
                }
                if (sub == 0)
                    break;
            }
            return false;
        }
    }

    auto satisfies_bruteforce(const Stack & s, const CoordArray & x, const OvInstance & inst) -> bool
    {
        if (s.size() > x.size())
            throw StackTooLong{"stack longer than k-1"};
        return chain(s, x, inst, 0, (1u << x.size()) - 1);
    }

    auto common_coord_array(const Stack & a, const Stack & b, const OvInstance & inst, int k) -> CoordArray
    {
        CoordArray x;
        x.resize(k - 1);
        vector<int> idx;
        for (int l = 1; l <= k - 1; ++l) {
            idx.clear();
            for (int i = 0; i < std::min(k - l, a.size()); ++i)
                idx.push_back(a[i]);
            for (int i = 0; i < std::min(l, b.size()); ++i)
                idx.push_back(b[i]);
            x.set(l - 1, ind(inst, idx));
        }
        return x;
    }

    auto yes1_conflict(int j, const vector<int> & tuple, const CoordArray & x, const OvInstance & inst) -> bool
    {
        int k = static_cast<int>(tuple.size());
        vector<int> left(tuple.begin(), tuple.begin() + j);
        vector<int> right(tuple.rbegin(), tuple.rbegin() + (k - j));
        if (static_cast<int>(left.size()) > x.size() || static_cast<int>(right.size()) > x.size())
            return false;
        return satisfies(Stack(left), x, inst) && satisfies(Stack(right), x, inst);
    }

    CoordSpace::CoordSpace(int d, int m) :
        d_(d), m_(m), size_(1)
    {
        for (int i = 0; i < m; ++i)
            size_ *= static_cast<std::uint64_t>(d);
    }

    auto CoordSpace::at(std::uint64_t index) const -> CoordArray
    {
        CoordArray x;
        x.resize(m_);
        for (int i = m_ - 1; i >= 0; --i) {
            x.set(i, static_cast<int>(index % d_));
            index /= d_;
        }
        return x;
    }

    auto CoordSpace::index_of(const CoordArray & x) const -> std::uint64_t
    {
        std::uint64_t r = 0;
        for (int i = 0; i < m_; ++i)
            r = r * d_ + x[i];
        return r;
    }

    auto satisfaction_bits(const Stack & s, const CoordSpace & space, const OvInstance & inst) -> vector<std::uint64_t>
    {
        vector<std::uint64_t> bits((space.size() + 63) / 64, 0);
        for (std::uint64_t i = 0; i < space.size(); ++i)
            if (satisfies(s, space.at(i), inst))
                bits[i / 64] |= std::uint64_t{1} << (i % 64);
        return bits;
    }

    auto all_stacks(int n, int length) -> vector<Stack>
    {
        vector<Stack> out{Stack{}};
        for (int l = 0; l < length; ++l) {
            vector<Stack> next;
            next.reserve(out.size() * n);
            for (auto & s : out)
                for (int a = 0; a < n; ++a)
                    next.push_back(s.pushed(a));
            out = std::move(next);
        }
        return out;
    }
}
