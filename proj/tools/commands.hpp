#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "nanogrid/ems.hpp"

namespace nanogrid::cli {

/// Each command returns the process exit status: 0 on success, 1 on any error.
/// Data goes to `out`, diagnostics to `err`.

int cmd_run(const std::filesystem::path& scenario, const std::filesystem::path& out_dir,
            std::optional<ControllerKind> controller, std::ostream& out, std::ostream& err);

int cmd_compare(const std::filesystem::path& scenario, const std::filesystem::path& out_dir,
                std::ostream& out, std::ostream& err);

int cmd_dump_fis(const std::filesystem::path& out_path, std::ostream& err);

}  // namespace nanogrid::cli
