#include "radreact/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <stdexcept>

namespace radreact {

std::string format_double(double x)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_short(double x)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path), path_(path)
{
    if (!out_)
        throw std::runtime_error(path + ": " + std::strerror(errno));
    for (const auto& h : header)
        *this << h;
    end_row();
}

void CsvWriter::sep()
{
    if (!first_)
        out_ << ',';
    first_ = false;
}

CsvWriter& CsvWriter::operator<<(double x)
{
    sep();
    out_ << format_double(x);
    return *this;
}

CsvWriter& CsvWriter::operator<<(const Vec3& v)
{
    for (int i = 0; i < 3; ++i)
        *this << v(i);
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& s)
{
    sep();
    out_ << s;
    return *this;
}

void CsvWriter::end_row()
{
    out_ << '\n';
    first_ = true;
    if (!out_)
        throw std::runtime_error(path_ + ": write failed");
}

void CsvWriter::close()
{
    out_.close();
    if (out_.fail())
        throw std::runtime_error(path_ + ": close failed");
}

} // namespace radreact
