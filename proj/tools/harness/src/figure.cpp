#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hbm/harness.hpp"

namespace hbm::harness {

std::vector<FigureTable> figure_tables(DensityFamily family, const ModelParams& params,
                                       const std::vector<double>& t_list,
                                       const std::vector<double>& x_grid) {
  std::vector<FigureTable> out;
  for (double t : t_list) {
    FigureTable ft;
    ft.t = t;
    ft.table.columns = {"x", "f_hybrid", "f_gaussian"};
    for (double x : x_grid) {
      ft.table.add_row({x, density(family, x, t, params), gaussian_density(x, t, params)});
    }
    out.push_back(std::move(ft));
  }
  return out;
}

std::vector<std::string> emit_figure_data(DensityFamily family, const ModelParams& params,
                                          const std::vector<double>& t_list,
                                          const std::vector<double>& x_grid,
                                          const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw usage_error("cannot create " + directory + ": " + ec.message());
  }
  std::vector<std::string> paths;
  for (const FigureTable& ft : figure_tables(family, params, t_list, x_grid)) {
    char label[32];
    std::snprintf(label, sizeof label, "figure_t%g.csv", ft.t);
    const std::string path = (std::filesystem::path(directory) / label).string();
    std::ofstream os(path);
    if (!os) {
      throw usage_error("cannot write " + path);
    }
    write_csv(os, ft.table);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace hbm::harness
