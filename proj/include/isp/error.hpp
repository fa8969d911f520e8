// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_ERROR_HPP
#define ISP_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace isp
{

// Data errors (non-finite inputs, inconsistent files, malformed payloads). Invalid
// parameters are reported with std::invalid_argument / std::out_of_range instead.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Malformed binary or text payload; carries the byte offset where decoding failed.
class FormatError : public Error
{
public:
  FormatError(const std::string &what, std::uint64_t offset)
    : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset)
  {
  }

  std::uint64_t offset() const { return offset_; }

private:
  std::uint64_t offset_;
};

// Filesystem failure; the message always names the path.
class IoError : public Error
{
public:
  IoError(const std::string &what, const std::string &path)
    : Error(what + ": " + path), path_(path)
  {
  }

  const std::string &path() const { return path_; }

private:
  std::string path_;
};

}  // namespace isp

#endif  // ISP_ERROR_HPP
