#pragma once

#include <stdexcept>
#include <string>

namespace cocycle
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A group, morphism, action or crossed module failed one of its axioms.
    class StructureError : public Error
    {
    public:
        using Error::Error;
    };

    // An order cap was exceeded while closing or searching a group.
    class SizeError : public Error
    {
    public:
        using Error::Error;
    };

    // A simplex with more than four vertices.
    class DimensionError : public Error
    {
    public:
        using Error::Error;
    };

    class ConnectivityError : public Error
    {
    public:
        using Error::Error;
    };

    class PreconditionError : public Error
    {
    public:
        using Error::Error;
    };

    class UsageError : public Error
    {
    public:
        using Error::Error;
    };

    // A search exhausted its node budget. Never a silent truncation.
    class ResourceError : public Error
    {
    public:
        using Error::Error;
    };
}
