#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "pipeleak/errors.hpp"

namespace pipeleak {

// Segments of the twin-line system: the intact line carries index 0 over the
// full length; the damaged line is split at the leak into an upstream and a
// downstream piece.
enum class SegmentId { Intact = 0, UpstreamOfLeak = 1, DownstreamOfLeak = 2 };

enum class FieldQuantity { Pressure, MassFlux };

// A quantity sampled on a shared space-time grid, per segment.  Cells outside
// a segment's spatial domain are absent (std::nullopt); both grids are shared
// by all three segments so fields can be compared cell by cell.
struct ScalarField {
    FieldQuantity quantity = FieldQuantity::Pressure;
    std::vector<double> x_grid;
    std::vector<double> t_grid;
    std::array<std::vector<std::optional<double>>, 3> cells;

    std::size_t nx() const { return x_grid.size(); }
    std::size_t nt() const { return t_grid.size(); }

    std::optional<double>& at(SegmentId seg, std::size_t ix, std::size_t it) {
        return cells[static_cast<std::size_t>(seg)][ix * nt() + it];
    }
    const std::optional<double>& at(SegmentId seg, std::size_t ix,
                                    std::size_t it) const {
        return cells[static_cast<std::size_t>(seg)][ix * nt() + it];
    }

    // Throws InvalidField unless the grids are nonempty and strictly
    // increasing, every segment plane has nx*nt cells, and (for pressure
    // fields) every present value is positive.
    void validate() const;

    // A field on the given grids with every cell absent.
    static ScalarField make(FieldQuantity quantity, std::vector<double> x_grid,
                            std::vector<double> t_grid);
};

}  // namespace pipeleak
