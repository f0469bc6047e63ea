#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "awfs/cell_complex.hpp"
#include "awfs/error.hpp"
#include "awfs/small_object.hpp"

namespace awfs {

/// A lifting problem of the generator ∂Δ^dim -> Δ^dim against p: E -> B, given
/// by the facet images of u: ∂Δ^dim -> E and the target dim-simplex of B.
struct GeneratingSquare {
  int dim = 0;
  std::vector<std::string> boundary;  // ids in E, d_0..d_dim (empty for dim 0)
  std::string target;                 // id in B

  friend auto operator<=>(const GeneratingSquare&, const GeneratingSquare&) = default;
  friend bool operator==(const GeneratingSquare&, const GeneratingSquare&) = default;

  std::string encode() const;
};

/// Whether `filler` is a dim-simplex of E with the square's faces lying over its target.
bool is_filler(const SimplicialMap& p, const GeneratingSquare& square, const std::string& filler);

/// Whether the square is a genuine lifting problem against p.
bool is_generating_square(const SimplicialMap& p, const GeneratingSquare& square);

/// A chosen filler for generating squares against p.
class FillerTable {
 public:
  enum class Fallback { search, fail };

  explicit FillerTable(SimplicialMap p, std::map<GeneratingSquare, std::string> entries = {},
                       Fallback fallback = Fallback::search);

  const SimplicialMap& p() const noexcept { return p_; }
  const std::map<GeneratingSquare, std::string>& entries() const noexcept { return entries_; }
  Fallback fallback() const noexcept { return fallback_; }

  /// The table entry if present (returned as is), else the first valid filler by id
  /// when the fallback is search.
  std::optional<std::string> fill(const GeneratingSquare& square) const;

 private:
  SimplicialMap p_;
  std::map<GeneratingSquare, std::string> entries_;
  Fallback fallback_;
};

/// Thrown when a filler table has no valid answer for some square.
class LiftingFailure : public Error {
 public:
  LiftingFailure(const std::string& what, GeneratingSquare square, std::string cell, std::optional<std::string> filler)
      : Error(what), square_(std::move(square)), cell_(std::move(cell)), filler_(std::move(filler)) {}

  const GeneratingSquare& square() const noexcept { return square_; }
  /// The cell being extended over.
  const std::string& cell() const noexcept { return cell_; }
  /// The rejected filler, if the table offered one.
  const std::optional<std::string>& filler() const noexcept { return filler_; }

 private:
  GeneratingSquare square_;
  std::string cell_;
  std::optional<std::string> filler_;
};

/// The fillers of Ef given by the cells of Kf.
FillerTable free_fillers(const FactorResult& fr);

/// A diagonal d: body(c) -> E for the square (u, v): U(c) -> p, built cell by cell.
SimplicialMap solve_lifting(const CellComplex& c, const FillerTable& table, const ArrowSquare& square);

struct FillerFailure {
  GeneratingSquare square;
  std::optional<std::string> filler;  // nullopt: no filler found
  std::string reason;
};

struct FillerReport {
  std::size_t checked = 0;
  bool exhausted = true;  // false when the budget cut enumeration short
  std::vector<FillerFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks every explicit entry, then enumerates up to `budget` generating squares
/// against p and checks the chosen fillers. One failure per offending square.
FillerReport verify_fillers(const FillerTable& table, std::size_t budget = 10000);

}  // namespace awfs
