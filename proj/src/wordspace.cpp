#include "shapo/wordspace.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "shapo/util.hpp"

namespace shapo {

std::string word_str(const Word& w, char gen) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ".";
        os << gen << w[i] + 1;
    }
    return os.str();
}

namespace {

// All words with the given letter multiset, in lex order.
std::vector<Word> words_of_content(const Weight& nu) {
    Word sorted;
    for (std::size_t i = 0; i < nu.size(); ++i)
        for (int k = 0; k < nu[i]; ++k) sorted.push_back((int)i);
    std::vector<Word> out;
    do {
        out.push_back(sorted);
    } while (std::next_permutation(sorted.begin(), sorted.end()));
    return out;
}

// Enumerate all nu >= 0 with ht(nu) <= cutoff, ordered by (height, lex).
std::vector<Weight> enumerate_weights(int rank, int cutoff) {
    std::vector<Weight> out;
    Weight cur(rank, 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == rank) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            rec(pos + 1, remaining - v);
            cur[pos] = 0;
        }
    };
    rec(0, cutoff);
    std::sort(out.begin(), out.end(), [](const Weight& a, const Weight& b) {
        int ha = weight_height(a), hb = weight_height(b);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    return out;
}

} // namespace

WordSpace::WordSpace(const RootSystem& rs, int cutoff) : rs_(&rs), cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    weight_order_ = enumerate_weights(rs.rank(), cutoff);
    for (const auto& nu : weight_order_) build_component(nu);
    for (const auto& nu : weight_order_) {
        auto& comp = comps_.at(nu);
        comp.global_offset = (int)basis_.size();
        for (int col : comp.basis_cols) {
            basis_pos_[comp.words[col]] = (int)basis_.size();
            basis_.push_back(BasisEntry{nu, comp.words[col], weight_height(nu)});
        }
    }
}

void WordSpace::build_component(const Weight& nu) {
    Component comp;
    comp.nu = nu;
    comp.words = words_of_content(nu);
    for (std::size_t i = 0; i < comp.words.size(); ++i) comp.word_pos[comp.words[i]] = (int)i;

    const int rank = rs_->rank();
    const int ncols = (int)comp.words.size();
    std::vector<std::vector<Scalar>> rows;

    // Serre elements s_{ij} = sum_k (-1)^k [n..k]_{q_i} x_i^{n-k} x_j x_i^k,
    // n = 1 - a_{ij}.  A row is u * s_{ij} * w for every split of nu.
    for (int i = 0; i < rank && ncols > 1; ++i) {
        for (int j = 0; j < rank; ++j) {
            if (i == j) continue;
            const int n = 1 - rs_->cartan()[i][j];
            Weight serre_content(rank, 0);
            serre_content[i] = n;
            serre_content[j] = 1;
            Weight rest = weight_sub(nu, serre_content);
            if (!weight_nonneg(rest)) continue;
            std::vector<std::pair<Word, Scalar>> serre_terms;
            for (int k = 0; k <= n; ++k) {
                Word t;
                for (int a = 0; a < n - k; ++a) t.push_back(i);
                t.push_back(j);
                for (int a = 0; a < k; ++a) t.push_back(i);
                Scalar c = q_binomial(n, k, rs_->sym()[i]);
                if (k % 2 == 1) c = -c;
                serre_terms.emplace_back(std::move(t), std::move(c));
            }
            // all splits rest = content(u) + content(w)
            std::vector<Weight> left_contents = enumerate_weights(rank, weight_height(rest));
            for (const auto& ul : left_contents) {
                Weight wr = weight_sub(rest, ul);
                if (!weight_nonneg(wr)) continue;
                for (const auto& u : words_of_content(ul)) {
                    for (const auto& w : words_of_content(wr)) {
                        std::vector<Scalar> row(ncols);
                        for (const auto& [mid, c] : serre_terms) {
                            Word full = u;
                            full.insert(full.end(), mid.begin(), mid.end());
                            full.insert(full.end(), w.begin(), w.end());
                            row[comp.word_pos.at(full)] += c;
                        }
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
    }

    // RREF with leftmost-pivot choice; pivot columns are eliminated words,
    // the remaining columns form the quotient basis.
    std::vector<int> pivot_cols;
    std::size_t rank_rows = 0;
    for (int col = 0; col < ncols && rank_rows < rows.size(); ++col) {
        std::size_t sel = rank_rows;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank_rows], rows[sel]);
        Scalar inv = rows[rank_rows][col].inverse();
        for (auto& x : rows[rank_rows]) x = x * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank_rows || rows[r][col].is_zero()) continue;
            Scalar f = rows[r][col];
            for (int c2 = 0; c2 < ncols; ++c2) rows[r][c2] = rows[r][c2] - f * rows[rank_rows][c2];
        }
        pivot_cols.push_back(col);
        ++rank_rows;
    }
    rows.resize(rank_rows);
    comp.rref = std::move(rows);
    comp.pivot_col = std::move(pivot_cols);
    std::vector<char> is_pivot(ncols, 0);
    for (int c : comp.pivot_col) is_pivot[c] = 1;
    for (int c = 0; c < ncols; ++c)
        if (!is_pivot[c]) comp.basis_cols.push_back(c);

    comps_.emplace(nu, std::move(comp));
}

const WordSpace::Component& WordSpace::component(const Weight& nu) const {
    auto it = comps_.find(nu);
    if (it == comps_.end()) throw math_error("word component beyond cutoff: " + weight_str(nu));
    return it->second;
}

bool WordSpace::has_component(const Weight& nu) const { return comps_.count(nu) > 0; }

int WordSpace::basis_index(const Word& w) const {
    auto it = basis_pos_.find(w);
    return it == basis_pos_.end() ? -1 : it->second;
}

std::vector<std::pair<int, Scalar>> WordSpace::project(const FreeVec& v) const {
    std::vector<std::pair<int, Scalar>> out;
    if (v.empty()) return out;
    Weight nu(rs_->rank(), 0);
    for (int l : v.begin()->first) nu[l] += 1;
    if (weight_height(nu) > cutoff_) return out; // truncated away
    const Component& comp = component(nu);
    std::vector<Scalar> dense(comp.words.size());
    for (const auto& [w, c] : v) dense[comp.word_pos.at(w)] += c;
    for (std::size_t r = 0; r < comp.rref.size(); ++r) {
        const Scalar& f = dense[comp.pivot_col[r]];
        if (f.is_zero()) continue;
        Scalar factor = f; // dense[pivot] is cleared by the loop below
        for (std::size_t c = 0; c < comp.words.size(); ++c) {
            if (comp.rref[r][c].is_zero()) continue;
            dense[c] = dense[c] - factor * comp.rref[r][c];
        }
    }
    for (std::size_t k = 0; k < comp.basis_cols.size(); ++k) {
        const Scalar& c = dense[comp.basis_cols[k]];
        if (!c.is_zero()) out.emplace_back(comp.global_offset + (int)k, c);
    }
    return out;
}

std::vector<std::pair<int, Scalar>> WordSpace::project_word(const Word& w) const {
    FreeVec v;
    v[w] = Scalar(1);
    return project(v);
}

std::vector<std::pair<int, Scalar>> WordSpace::left_mult_col(int i, int b) const {
    Word w = basis_[b].word;
    w.insert(w.begin(), i);
    if ((int)w.size() > cutoff_) return {};
    return project_word(w);
}

std::vector<std::pair<int, Scalar>> WordSpace::right_mult_col(int i, int b) const {
    Word w = basis_[b].word;
    w.push_back(i);
    if ((int)w.size() > cutoff_) return {};
    return project_word(w);
}

} // namespace shapo
