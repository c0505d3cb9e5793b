#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dasep {

/// A nonincreasing sequence of nonnegative integers. Comparison pads the
/// shorter partition with zeros, so (2,2) == (2,2,0).
class Partition {
public:
    Partition() = default;

    /// Validates `parts`; throws ValidationError naming the first bad index.
    static Partition make(std::span<const int> parts);
    static Partition make(std::initializer_list<int> parts) {
        return make(std::span<const int>(parts.begin(), parts.size()));
    }
    /// Parses "2,1,0".
    static Partition parse(std::string_view text);

    const std::vector<int>& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    int nonzero_count() const;

    /// lambda'_k = #{i : lambda_i >= k}, for k = 1..largest().
    Partition conjugate() const;

    std::string to_string() const;

    friend bool operator==(const Partition& a, const Partition& b);

private:
    std::vector<int> parts_;
};

/// A configuration on the ring: letters[k] is the species at site k (0 = hole).
class Word {
public:
    Word() = default;
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}
    Word(std::initializer_list<int> letters) : letters_(letters) {}

    /// Parses the comma-separated form produced by to_string().
    static Word parse(std::string_view text);

    const std::vector<int>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    int operator[](std::size_t i) const { return letters_[i]; }

    /// Shift every letter one site to the left: (a,b,c) -> (b,c,a).
    Word rotated(std::size_t steps = 1) const;
    /// The partition obtained by sorting letters nonincreasingly.
    Partition sorted_partition() const;
    int nonzero_count() const;
    int max_letter() const;

    /// "0,1,2" -- commas keep species >= 10 unambiguous.
    std::string to_string() const;

    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<int> letters_;
};

/// An ordered (lexicographic) set of words, indexable both ways.
class StateSpace {
public:
    StateSpace() = default;
    /// Sorts and deduplicates `words`; all words must share one length.
    explicit StateSpace(std::vector<Word> words);

    std::size_t size() const { return words_.size(); }
    std::size_t sites() const { return sites_; }
    const Word& operator[](std::size_t i) const { return words_[i]; }
    const std::vector<Word>& words() const { return words_; }
    auto begin() const { return words_.begin(); }
    auto end() const { return words_.end(); }

    std::optional<std::size_t> index_of(const Word& w) const;
    /// index_of, throwing ValidationError when `w` is absent.
    std::size_t require_index(const Word& w) const;
    bool contains(const Word& w) const { return index_of(w).has_value(); }

    /// True iff rotating every word by one site yields the same set.
    bool rotation_closed() const;

    friend bool operator==(const StateSpace& a, const StateSpace& b) { return a.words_ == b.words_; }

private:
    std::vector<Word> words_;
    std::size_t sites_ = 0;
};

/// All distinct rearrangements of lambda, in lexicographic order.
std::vector<Word> permutations_of(const Partition& lambda);

/// n! / prod(multiplicity!) for the parts of lambda.
unsigned long long permutation_count(const Partition& lambda);

/// The ASEP(lambda) state set S_n(lambda).
StateSpace sector_states(const Partition& lambda);

/// The DASEP(n,p,q) state set: words of length n with exactly q nonzero
/// letters, each at most p. Requires n > q >= 1 and p >= 1.
StateSpace dasep_states(int n, int p, int q);

/// The distinct sectors (sorted partitions) present in a state space, in
/// lexicographic order of their parts.
std::vector<Partition> sectors_of(const StateSpace& space);

}  // namespace dasep
