#include "advwave/app/csv.hpp"

#include <filesystem>
#include <stdexcept>

#include "advwave/app/config.hpp"

namespace advwave::app {

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::comments(const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) out_ << "# " << k << " = " << v << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (columns_ && values.size() != columns_) throw std::logic_error("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << fmt_double(values[i]);
    out_ << '\n';
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string& c = cells[i];
        out_ << (i ? "," : "");
        if (c.find_first_of(",\"\n") == std::string::npos) {
            out_ << c;
            continue;
        }
        out_ << '"';
        for (char ch : c) out_ << (ch == '"' ? "\"\"" : std::string(1, ch));
        out_ << '"';
    }
    out_ << '\n';
}

void CsvWriter::close() {
    out_.flush();
    if (!out_) throw IoError("write to '" + path_ + "' failed");
    out_.close();
}

std::string output_path(const std::string& dir, const std::string& name) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::path d(dir.empty() ? "." : dir);
    if (!fs::exists(d, ec)) fs::create_directories(d, ec);
    if (ec || !fs::is_directory(d, ec)) throw IoError("output directory '" + dir + "' is not usable");
    return (d / name).string();
}

}  // namespace advwave::app
