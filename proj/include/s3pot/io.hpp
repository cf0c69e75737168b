#ifndef S3POT_IO_HPP
#define S3POT_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace s3pot {

// Fixed 12-significant-digit formatting keeps CSV/JSON output byte-reproducible.
std::string format_sig(double v, int digits = 12);

// Round a double through the 12-digit decimal representation (for JSON payloads).
double round_sig(double v, int digits = 12);

// temp file + rename in the target directory
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    std::string str() const;
};

}  // namespace s3pot

#endif
