#include "dasep/states.hpp"

#include "dasep/rational.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <set>

namespace dasep {

namespace {

std::vector<int> parse_int_list(std::string_view text, std::string_view what) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        int value = 0;
        const auto* first = piece.data();
        const auto* last = piece.data() + piece.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (piece.empty() || ec != std::errc{} || ptr != last) {
            throw ValidationError("malformed " + std::string(what) + " '" + std::string(text) + "'");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string join(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

std::vector<int> trimmed(const std::vector<int>& parts) {
    std::vector<int> out = parts;
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace

Partition Partition::make(std::span<const int> parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0) {
            throw ValidationError("partition entry at index " + std::to_string(i) + " is negative");
        }
        if (i + 1 < parts.size() && parts[i] < parts[i + 1]) {
            throw ValidationError("partition is not nonincreasing at index " + std::to_string(i) + " (" +
                                  std::to_string(parts[i]) + " < " + std::to_string(parts[i + 1]) + ")");
        }
    }
    Partition p;
    p.parts_.assign(parts.begin(), parts.end());
    return p;
}

Partition Partition::parse(std::string_view text) {
    const auto values = parse_int_list(text, "partition");
    return make(values);
}

int Partition::nonzero_count() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int x) { return x != 0; }));
}

Partition Partition::conjugate() const {
    std::vector<int> conj;
    for (int k = 1; k <= largest(); ++k) {
        conj.push_back(static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [k](int x) { return x >= k; })));
    }
    return make(conj);
}

std::string Partition::to_string() const { return join(parts_); }

bool operator==(const Partition& a, const Partition& b) { return trimmed(a.parts_) == trimmed(b.parts_); }

Word Word::parse(std::string_view text) {
    auto letters = parse_int_list(text, "word");
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (letters[i] < 0) throw ValidationError("word letter at index " + std::to_string(i) + " is negative");
    }
    return Word(std::move(letters));
}

Word Word::rotated(std::size_t steps) const {
    if (letters_.empty()) return *this;
    std::vector<int> out = letters_;
    std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(steps % out.size()), out.end());
    return Word(std::move(out));
}

Partition Word::sorted_partition() const {
    std::vector<int> parts = letters_;
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition::make(parts);
}

int Word::nonzero_count() const {
    return static_cast<int>(std::count_if(letters_.begin(), letters_.end(), [](int x) { return x != 0; }));
}

int Word::max_letter() const { return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end()); }

std::string Word::to_string() const { return join(letters_); }

StateSpace::StateSpace(std::vector<Word> words) : words_(std::move(words)) {
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
    if (!words_.empty()) sites_ = words_.front().size();
    for (const auto& w : words_) {
        if (w.size() != sites_) throw ValidationError("state space words must share one length");
    }
}

std::optional<std::size_t> StateSpace::index_of(const Word& w) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || *it != w) return std::nullopt;
    return static_cast<std::size_t>(it - words_.begin());
}

std::size_t StateSpace::require_index(const Word& w) const {
    auto idx = index_of(w);
    if (!idx) throw ValidationError("word " + w.to_string() + " is not in the state space");
    return *idx;
}

bool StateSpace::rotation_closed() const {
    return std::all_of(words_.begin(), words_.end(), [this](const Word& w) { return contains(w.rotated()); });
}

std::vector<Word> permutations_of(const Partition& lambda) {
    std::vector<int> letters = lambda.parts();
    std::sort(letters.begin(), letters.end());
    std::vector<Word> out;
    do {
        out.emplace_back(letters);
    } while (std::next_permutation(letters.begin(), letters.end()));
    return out;
}

unsigned long long permutation_count(const Partition& lambda) {
    std::map<int, int> multiplicity;
    for (int x : lambda.parts()) ++multiplicity[x];
    // Multiply by n!/prod(m!) incrementally as a product of binomials to stay in range.
    unsigned long long count = 1;
    int placed = 0;
    for (const auto& [value, m] : multiplicity) {
        for (int k = 1; k <= m; ++k) {
            count = count * static_cast<unsigned long long>(placed + k) / static_cast<unsigned long long>(k);
        }
        placed += m;
    }
    return count;
}

StateSpace sector_states(const Partition& lambda) { return StateSpace(permutations_of(lambda)); }

StateSpace dasep_states(int n, int p, int q) {
    if (q < 1) throw ValidationError("DASEP requires q >= 1 (got q=" + std::to_string(q) + ")");
    if (p < 1) throw ValidationError("DASEP requires p >= 1 (got p=" + std::to_string(p) + ")");
    if (n <= q) {
        throw ValidationError("DASEP requires n > q (got n=" + std::to_string(n) + ", q=" + std::to_string(q) + ")");
    }
    // Every partition with exactly q parts in 1..p, padded with n-q zeros.
    std::vector<Word> words;
    std::vector<int> parts(static_cast<std::size_t>(q), 0);
    std::function<void(int, int)> fill = [&](int index, int bound) {
        if (index == q) {
            std::vector<int> full = parts;
            full.resize(static_cast<std::size_t>(n), 0);
            auto perms = permutations_of(Partition::make(full));
            words.insert(words.end(), perms.begin(), perms.end());
            return;
        }
        for (int v = bound; v >= 1; --v) {
            parts[static_cast<std::size_t>(index)] = v;
            fill(index + 1, v);
        }
    };
    fill(0, p);
    return StateSpace(std::move(words));
}

std::vector<Partition> sectors_of(const StateSpace& space) {
    std::set<std::vector<int>> seen;
    for (const auto& w : space) seen.insert(w.sorted_partition().parts());
    std::vector<Partition> out;
    for (const auto& parts : seen) out.push_back(Partition::make(parts));
    return out;
}

}  // namespace dasep
