#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ltlf {

/// A letter is a subset of the atom alphabet packed into an integer.
/// Atom i occupies bit (n-1-i), so atom 0 is the most significant bit and the
/// integer order of letters equals the lexicographic order of their printed
/// bit-vectors.
using Letter = std::uint32_t;

class Alphabet {
 public:
  static constexpr std::size_t kMaxAtoms = 20;

  Alphabet();
  /// Sorts and deduplicates `atoms`.
  explicit Alphabet(std::vector<std::string> atoms);

  std::size_t size() const noexcept { return atoms_->size(); }
  const std::string& atom(std::size_t i) const { return (*atoms_)[i]; }
  const std::vector<std::string>& atoms() const noexcept { return *atoms_; }
  /// Index of `name`, or size() when absent.
  std::size_t index_of(const std::string& name) const;

  Letter mask(std::size_t i) const noexcept { return Letter{1} << (size() - 1 - i); }
  bool contains(Letter l, std::size_t i) const noexcept { return (l & mask(i)) != 0; }
  std::uint64_t letter_count() const noexcept { return std::uint64_t{1} << size(); }

  /// e.g. "10" for {a} over {a, b}.
  std::string bits(Letter l) const;
  /// e.g. "a,b", or "-" for the empty letter.
  std::string letter_text(Letter l) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.atoms_ == b.atoms_ || *a.atoms_ == *b.atoms_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> atoms_;
};

}  // namespace ltlf
