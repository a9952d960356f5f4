#pragma once

#include "radreact/common.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace radreact {

// 17 significant digits
std::string format_double(double x);
// shortest round-trip text, for labels and file names
std::string format_short(double x);

class CsvWriter {
public:
    // throws std::runtime_error carrying the OS message when the file cannot be opened
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    CsvWriter& operator<<(double x);
    CsvWriter& operator<<(const Vec3& v);
    CsvWriter& operator<<(const std::string& s);
    void end_row();
    void close();

private:
    void sep();

    std::ofstream out_;
    std::string path_;
    bool first_ = true;
};

} // namespace radreact
