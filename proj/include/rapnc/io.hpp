#pragma once

#include <iosfwd>
#include <string>

#include "rapnc/instance.hpp"

namespace rapnc {

// One instance document: the problem plus the mode it is meant to be solved
// in. Stored as JSON with the user-facing 1-based arrays (sigma/a/b of length
// m); the a_0 = b_0 = 0 convention entries are an internal detail.
struct InstanceDoc {
  NestedInstance instance;
  Mode mode = Mode::kContinuous;
};

InstanceDoc read_instance(std::istream& in);
InstanceDoc read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const InstanceDoc& doc);
void write_instance_file(const std::string& path, const InstanceDoc& doc);

Allocation read_allocation(std::istream& in);
Allocation read_allocation_file(const std::string& path);
void write_allocation(std::ostream& out, const Allocation& alloc);
void write_allocation_file(const std::string& path, const Allocation& alloc);

}  // namespace rapnc
