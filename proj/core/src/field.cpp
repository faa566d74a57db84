#include "pipeleak/field.hpp"

#include <string>

namespace pipeleak {

namespace {

void check_strictly_increasing(const std::vector<double>& grid,
                               const char* name) {
    if (grid.empty())
        throw InvalidField(std::string("ScalarField: ") + name + " is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw InvalidField(std::string("ScalarField: ") + name +
                               " must be strictly increasing (index " +
                               std::to_string(i) + ")");
}

}  // namespace

void ScalarField::validate() const {
    check_strictly_increasing(x_grid, "x_grid");
    check_strictly_increasing(t_grid, "t_grid");
    const std::size_t expected = nx() * nt();
    for (std::size_t seg = 0; seg < cells.size(); ++seg) {
        if (cells[seg].size() != expected)
            throw InvalidField("ScalarField: segment " + std::to_string(seg) +
                               " has " + std::to_string(cells[seg].size()) +
                               " cells, expected " + std::to_string(expected));
        if (quantity == FieldQuantity::Pressure)
            for (const auto& cell : cells[seg])
                if (cell && !(*cell > 0.0))
                    throw InvalidField(
                        "ScalarField: pressure values must be positive");
    }
}

ScalarField ScalarField::make(FieldQuantity quantity,
                              std::vector<double> x_grid,
                              std::vector<double> t_grid) {
    ScalarField f;
    f.quantity = quantity;
    f.x_grid = std::move(x_grid);
    f.t_grid = std::move(t_grid);
    const std::size_t n = f.nx() * f.nt();
    for (auto& plane : f.cells) plane.assign(n, std::nullopt);
    return f;
}

}  // namespace pipeleak
