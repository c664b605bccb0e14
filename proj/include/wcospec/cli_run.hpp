#pragma once

#include "wcospec/config.hpp"

namespace wcospec {

// Executes one job: writes report.json (always) plus task-specific CSVs into
// cfg.output_dir, atomically (temp + rename).  Returns the process exit code:
// 0 success, 2 refused (finite order / non-elliptic), 3 invalid config,
// 4 verify-all gate failure.
int run_job(const JobConfig& cfg);

}  // namespace wcospec
