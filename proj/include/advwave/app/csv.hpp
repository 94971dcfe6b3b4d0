// CSV output: `#` comment block, one header row, comma-separated rows with
// 17 significant digits.
#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace advwave::app {

class CsvWriter {
public:
    /// Opens `path` for writing. Throws IoError.
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& text);
    void comments(const std::vector<std::pair<std::string, std::string>>& kv);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    /// Text cells; quoted when they contain a comma or quote.
    void row_text(const std::vector<std::string>& cells);
    /// Flushes and checks the stream. Throws IoError.
    void close();

private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
};

/// Joins `dir` and `name`, creating `dir` when missing. Throws IoError.
std::string output_path(const std::string& dir, const std::string& name);

}  // namespace advwave::app
