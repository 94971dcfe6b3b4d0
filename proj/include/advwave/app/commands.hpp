// Subcommands of the advwave tool. Each returns the process exit status
// (0 success, 2 numerical-validation failure) and throws UsageError or
// IoError for statuses 1 and 3.
#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "advwave/app/config.hpp"

namespace advwave::app {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kIo = 3 };

int cmd_figure(int which, const RunConfig& cfg, std::ostream& log);
int cmd_power(const std::string& model, const RunConfig& cfg, std::ostream& log);
int cmd_corr(const RunConfig& cfg, std::ostream& log);
int cmd_detect(const RunConfig& cfg, std::ostream& log);
int cmd_validate(const RunConfig& cfg, std::ostream& log);

struct CheckResult {
    std::string name;
    double measured = 0;
    double tolerance = 0;
    bool pass = false;
    std::string note;
};

/// The oracle suite behind `validate`, in units Gamma = 1.
std::vector<CheckResult> run_validation(const Resolved& r, std::ostream& log);

/// Maps exceptions from a command body to exit statuses, reporting on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace advwave::app
