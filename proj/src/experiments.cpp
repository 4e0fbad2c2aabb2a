#include "ortho_approx/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "ortho_approx/errors.hpp"
#include "ortho_approx/matrix_io.hpp"

namespace oapx {
namespace {

struct CommandName {
  Command command;
  std::string_view name;
};

constexpr CommandName kCommands[] = {
    {Command::Orthogonalize, "orthogonalize"}, {Command::ErrorFactor, "error-factor"},
    {Command::Certify, "certify"},             {Command::ScalingStudy, "scaling-study"},
    {Command::Concentration, "concentration"}, {Command::Coherence, "coherence"},
    {Command::HaarApprox, "haar-approx"},      {Command::Bench, "bench"},
};

bool is_file_command(Command c) {
  return c == Command::Orthogonalize || c == Command::ErrorFactor || c == Command::Certify;
}

void require_variant(const ExperimentConfig& config, std::initializer_list<Variant> allowed) {
  if (!config.variant) return;
  if (std::find(allowed.begin(), allowed.end(), *config.variant) == allowed.end()) {
    throw ConfigInvalid("variant", std::string(to_string(*config.variant)) + " is not valid for " +
                                       std::string(to_string(config.command)));
  }
}

}  // namespace

std::string_view tool_version() { return ORTHO_APPROX_VERSION; }

std::string_view to_string(Command command) {
  for (const auto& entry : kCommands)
    if (entry.command == command) return entry.name;
  return "unknown";
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::Normalized: return "normalized";
    case Variant::ScaledRaw: return "scaled_raw";
    case Variant::Raw: return "raw";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view text) {
  for (const auto& entry : kCommands)
    if (entry.name == text) return entry.command;
  return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "normalized") return Variant::Normalized;
  if (text == "scaled_raw") return Variant::ScaledRaw;
  if (text == "raw") return Variant::Raw;
  return std::nullopt;
}

void apply_defaults(ExperimentConfig& config) {
  auto set = [](auto& field, auto value) {
    if (field == 0) field = value;
  };
  switch (config.command) {
    case Command::ScalingStudy:
      set(config.n, 200u);
      set(config.d, 20u);
      set(config.trials, 1u);
      if (config.scales.empty()) config.scales = {1e-1, 1e-2, 1e-3, 1e-4};
      if (!config.variant) config.variant = Variant::Normalized;
      break;
    case Command::Concentration:
      set(config.n, 200u);
      set(config.trials, 100000u);
      if (config.epsilons.empty()) config.epsilons = {0.2};
      break;
    case Command::Coherence:
      set(config.n, 2000u);
      set(config.d, 10u);
      set(config.trials, 5000u);
      if (config.epsilons.empty()) config.epsilons = {0.2};
      break;
    case Command::HaarApprox:
      set(config.n, 20000u);
      set(config.d, 10u);
      set(config.trials, 200u);
      if (!config.variant) config.variant = Variant::Normalized;
      break;
    case Command::Bench:
      set(config.n, 8192u);
      set(config.d, 256u);
      set(config.trials, 11u);
      break;
    case Command::ErrorFactor:
      if (!config.variant) config.variant = Variant::Normalized;
      break;
    case Command::Orthogonalize:
    case Command::Certify:
      break;
  }
}

void validate(const ExperimentConfig& config) {
  const Command c = config.command;

  if (is_file_command(c)) {
    if (config.in_path.empty()) throw ConfigInvalid("in", "an input matrix is required");
    if (c == Command::Certify && config.vec_path.empty()) {
      throw ConfigInvalid("vec", "certify needs a vector file");
    }
    if (c == Command::ErrorFactor) {
      require_variant(config, {Variant::Normalized, Variant::Raw});
    } else {
      require_variant(config, {});
    }
    return;
  }

  if (config.n == 0) throw ConfigInvalid("n", "must be positive");
  if (config.trials == 0) throw ConfigInvalid("trials", "must be positive");

  switch (c) {
    case Command::ScalingStudy: {
      require_variant(config, {Variant::Normalized, Variant::Raw});
      if (config.d < 2) throw ConfigInvalid("d", "must be at least 2");
      if (config.n < config.d) throw ConfigInvalid("n", "must be at least d");
      if (config.scales.empty()) throw ConfigInvalid("scales", "at least one scale is required");
      for (std::size_t i = 0; i < config.scales.size(); ++i) {
        const double t = config.scales[i];
        if (!(std::isfinite(t) && t > 0.0)) {
          throw ConfigInvalid("scales", "every scale must be positive and finite");
        }
        if (i > 0 && !(t < config.scales[i - 1])) {
          throw ConfigInvalid("scales", "scales must be strictly decreasing");
        }
      }
      break;
    }
    case Command::Concentration:
    case Command::Coherence: {
      require_variant(config, {});
      if (c == Command::Coherence) {
        if (config.d < 2) throw ConfigInvalid("k", "must be at least 2");
        if (config.n < config.d) throw ConfigInvalid("n", "must be at least k");
      }
      if (config.epsilons.empty()) throw ConfigInvalid("eps", "at least one value is required");
      for (double eps : config.epsilons) {
        if (!(eps > 0.0 && eps < 1.0)) throw ConfigInvalid("eps", "must lie in (0, 1)");
      }
      break;
    }
    case Command::HaarApprox:
      require_variant(config, {Variant::Normalized, Variant::ScaledRaw});
      if (config.d == 0) throw ConfigInvalid("k", "must be positive");
      if (config.n < config.d) throw ConfigInvalid("n", "must be at least k");
      break;
    case Command::Bench:
      require_variant(config, {});
      if (config.d == 0) throw ConfigInvalid("d", "must be positive");
      if (config.n < config.d) throw ConfigInvalid("n", "must be at least d");
      if (config.trials < 11) throw ConfigInvalid("trials", "bench needs at least 11 repetitions");
      break;
    default:
      break;
  }
}

void Table::write(std::ostream& out, OutputFormat format) const {
  if (format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        std::visit(
            [&out](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) {
                out << io::format_double(v);
              } else if constexpr (!std::is_same_v<T, std::nullptr_t>) {
                out << v;
              }
            },
            row[i]);
      }
      out << '\n';
    }
    return;
  }

  for (const auto& row : rows) {
    nlohmann::ordered_json object;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { object[columns[i]] = v; }, row[i]);
    }
    out << object.dump() << '\n';
  }
}

}  // namespace oapx
