#include "awfs/lifting.hpp"

#include "awfs/hom_search.hpp"

namespace awfs {

std::string GeneratingSquare::encode() const {
  std::string out = std::to_string(dim) + "|";
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += boundary[i];
  }
  return out + "|" + target;
}

bool is_generating_square(const SimplicialMap& p, const GeneratingSquare& square) {
  const auto& e = p.dom();
  const auto& b = p.cod();
  auto t = b.find(square.target);
  if (!t || t->dim != square.dim) return false;
  if (square.dim == 0) return square.boundary.empty();
  if (square.boundary.size() != static_cast<std::size_t>(square.dim + 1)) return false;
  std::vector<std::uint32_t> facets;
  for (const auto& id : square.boundary) {
    auto r = e.find(id);
    if (!r || r->dim != square.dim - 1) return false;
    facets.push_back(r->index);
  }
  try {
    auto u = boundary_from_facets(e, square.dim, facets);
    return compose(p, u) == boundary_of(b, *t);
  } catch (const InputError&) {
    return false;
  }
}

bool is_filler(const SimplicialMap& p, const GeneratingSquare& square, const std::string& filler) {
  const auto& e = p.dom();
  auto r = e.find(filler);
  if (!r || r->dim != square.dim) return false;
  if (p.cod().id(square.dim, p.at(*r).index) != square.target) return false;
  return e.face_ids(r->dim, r->index) == square.boundary;
}

FillerTable::FillerTable(SimplicialMap p, std::map<GeneratingSquare, std::string> entries, Fallback fallback)
    : p_(std::move(p)), entries_(std::move(entries)), fallback_(fallback) {}

std::optional<std::string> FillerTable::fill(const GeneratingSquare& square) const {
  auto it = entries_.find(square);
  if (it != entries_.end()) return it->second;
  if (fallback_ == Fallback::fail) return std::nullopt;
  const auto& e = p_.dom();
  for (std::uint32_t i = 0; i < e.size(square.dim); ++i) {
    if (is_filler(p_, square, e.id(square.dim, i))) return e.id(square.dim, i);
  }
  return std::nullopt;
}

FillerTable free_fillers(const FactorResult& fr) {
  std::map<GeneratingSquare, std::string> entries;
  for (const auto& [key, id] : fr.cell_of_key) entries.emplace(GeneratingSquare{key.dim, key.boundary, key.target}, id);
  return FillerTable(fr.ef, std::move(entries), FillerTable::Fallback::fail);
}

SimplicialMap solve_lifting(const CellComplex& c, const FillerTable& table, const ArrowSquare& square) {
  square.validate();
  if (!(square.left == u_of_complex(c))) throw InputError("square does not start at the underlying map of the complex");
  const auto& p = table.p();
  if (!(square.right == p)) throw InputError("square does not end at the map of the filler table");
  const auto& e = p.dom();
  const auto& v = square.bottom;
  SimplicialMap d = square.top;
  for (const auto& st : c.strata()) {
    const auto& body = st.body();
    Assignment assign(static_cast<std::size_t>(body.max_dim() + 1));
    for (int k = 0; k <= body.max_dim(); ++k) assign[static_cast<std::size_t>(k)].resize(body.size(k));
    const auto& x = st.boundary();
    for (int k = 0; k <= x.max_dim(); ++k) {
      for (std::uint32_t i = 0; i < x.size(k); ++i) assign[static_cast<std::size_t>(k)][st.body_index(k, i)] = d.at(k, i);
    }
    for (std::size_t i = 0; i < st.size(); ++i) {
      const auto& t = st.cell(i);
      GeneratingSquare sq{t.dim, {}, v.image(t.id)};
      for (auto f : facet_images(t.attach, t.dim)) sq.boundary.push_back(e.id(t.dim - 1, d.at(t.dim - 1, f)));
      auto filler = table.fill(sq);
      if (!filler) throw LiftingFailure("no filler for cell '" + t.id + "' (square " + sq.encode() + ")", sq, t.id, {});
      if (!is_filler(p, sq, *filler)) {
        throw LiftingFailure("filler '" + *filler + "' for cell '" + t.id + "' does not solve square " + sq.encode(), sq,
                             t.id, filler);
      }
      assign[static_cast<std::size_t>(t.dim)][st.glued_index(i)] = e.find(*filler)->index;
    }
    d = SimplicialMap(body, e, std::move(assign));
  }
  if (!(compose(d, square.left) == square.top) || !(compose(p, d) == square.bottom)) {
    throw InvariantViolation("constructed lift does not solve the square");
  }
  return d;
}

FillerReport verify_fillers(const FillerTable& table, std::size_t budget) {
  const auto& p = table.p();
  std::map<GeneratingSquare, FillerFailure> failures;
  FillerReport report;
  auto check = [&](const GeneratingSquare& sq) {
    ++report.checked;
    if (failures.count(sq) > 0) return;
    auto filler = table.fill(sq);
    if (!filler) {
      failures.emplace(sq, FillerFailure{sq, std::nullopt, "no filler"});
    } else if (!is_filler(p, sq, *filler)) {
      failures.emplace(sq, FillerFailure{sq, filler, "filler does not solve the square"});
    }
  };
  for (const auto& [sq, filler] : table.entries()) {
    if (!is_generating_square(p, sq)) {
      ++report.checked;
      failures.emplace(sq, FillerFailure{sq, filler, "entry is not a lifting problem against p"});
    } else {
      check(sq);
    }
  }
  const auto& e = p.dom();
  const auto& b = p.cod();
  HomSearch search(e, p);
  std::size_t seen = 0;
  for (int k = 0; k <= b.max_dim() && report.exhausted; ++k) {
    const auto shape = boundary_complex(k);
    for (std::uint32_t t = 0; t < b.size(k) && report.exhausted; ++t) {
      const auto target = boundary_of(b, {k, t});
      search.for_each(shape, nullptr, &target, [&](const Assignment& a) {
        if (seen == budget) {
          report.exhausted = false;
          return false;
        }
        ++seen;
        GeneratingSquare sq{k, {}, b.id(k, t)};
        if (k > 0) {
          SimplicialMap u(shape, e, a);
          for (auto f : facet_images(u, k)) sq.boundary.push_back(e.id(k - 1, f));
        }
        check(sq);
        return true;
      });
    }
  }
  for (auto& [sq, failure] : failures) report.failures.push_back(std::move(failure));
  return report;
}

}  // namespace awfs
