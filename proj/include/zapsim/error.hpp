#ifndef ZAPSIM_ERROR_HPP
#define ZAPSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace zapsim
{

// Bad argument, violated precondition, or invalid configuration value.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// File system failures while reading configs or writing datasets.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace zapsim

#endif // ZAPSIM_ERROR_HPP
