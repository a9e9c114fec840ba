#pragma once

// Laurent vectors: finitely supported maps exponent -> K^n, the coefficient
// objects of the polynomial-reduction layer.  The monomial order used
// throughout is "exponent descending, then component ascending".

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ftel/tower.hpp"

namespace ftel {

class LaurentVec {
public:
    using Mono = std::pair<int, int>;  // (exponent, component)

    explicit LaurentVec(int comps) : n_(comps) {
        if (comps <= 0) throw std::invalid_argument("LaurentVec: component count");
    }

    int comps() const { return n_; }
    bool is_zero() const { return d_.empty(); }

    K get(int exp, int i) const {
        auto it = d_.find(exp);
        if (it == d_.end()) return K(0);
        return it->second[static_cast<size_t>(i)];
    }

    void add(int exp, int i, const K& c) {
        if (c == K(0)) return;
        auto& row = slot(exp);
        row[static_cast<size_t>(i)] += c;
        cleanup(exp);
    }

    /// this += a * other
    void axpy(const K& a, const LaurentVec& other) {
        if (other.n_ != n_) throw std::invalid_argument("LaurentVec: size mismatch");
        if (a == K(0)) return;
        for (const auto& [exp, row] : other.d_) {
            auto& mine = slot(exp);
            for (int i = 0; i < n_; ++i)
                mine[static_cast<size_t>(i)] += a * row[static_cast<size_t>(i)];
            cleanup(exp);
        }
    }

    void scale(const K& a) {
        if (a == K(0)) {
            d_.clear();
            return;
        }
        for (auto& [exp, row] : d_)
            for (auto& c : row) c = c * a;
    }

    /// Leading monomial: highest exponent, then lowest component index.
    std::optional<Mono> lead() const {
        if (d_.empty()) return std::nullopt;
        const auto& [exp, row] = *d_.rbegin();
        for (int i = 0; i < n_; ++i)
            if (!(row[static_cast<size_t>(i)] == K(0))) return Mono{exp, i};
        throw std::logic_error("LaurentVec: empty stored row");
    }

    /// All monomials in decreasing order.
    std::vector<Mono> support() const {
        std::vector<Mono> out;
        for (auto it = d_.rbegin(); it != d_.rend(); ++it)
            for (int i = 0; i < n_; ++i)
                if (!(it->second[static_cast<size_t>(i)] == K(0))) out.emplace_back(it->first, i);
        return out;
    }

    int max_exp() const {
        if (d_.empty()) throw std::domain_error("LaurentVec: zero vector has no degree");
        return d_.rbegin()->first;
    }

    bool operator==(const LaurentVec& o) const { return n_ == o.n_ && d_ == o.d_; }

private:
    std::vector<K>& slot(int exp) {
        auto it = d_.find(exp);
        if (it == d_.end())
            it = d_.emplace(exp, std::vector<K>(static_cast<size_t>(n_), K(0))).first;
        return it->second;
    }
    void cleanup(int exp) {
        auto it = d_.find(exp);
        if (it == d_.end()) return;
        for (const K& c : it->second)
            if (!(c == K(0))) return;
        d_.erase(it);
    }

    int n_;
    std::map<int, std::vector<K>> d_;
};

/// Builds the vector whose component i is comps[i], shifted by shifts[i]
/// (a polynomial with an optional Laurent offset per component).
inline LaurentVec to_laurent(const std::vector<XPoly>& comps, const std::vector<int>& shifts = {}) {
    const int n = static_cast<int>(comps.size());
    LaurentVec out(n);
    for (int i = 0; i < n; ++i) {
        const int sh = shifts.empty() ? 0 : shifts[static_cast<size_t>(i)];
        for (int k = 0; k <= comps[static_cast<size_t>(i)].degree(); ++k)
            out.add(k + sh, i, comps[static_cast<size_t>(i)].coeff(k));
    }
    return out;
}

}  // namespace ftel
