#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace glvsim {

/// The three transmitted green leaf volatiles.
enum class Molecule : std::size_t { HAL = 0, HOL = 1, HAC = 2 };

inline constexpr std::size_t kNumMolecules = 3;
inline constexpr std::array<Molecule, kNumMolecules> kAllMolecules = {
    Molecule::HAL, Molecule::HOL, Molecule::HAC};

constexpr std::size_t index(Molecule m) { return static_cast<std::size_t>(m); }

constexpr std::string_view molecule_name(Molecule m) {
  switch (m) {
  case Molecule::HAL:
    return "HAL";
  case Molecule::HOL:
    return "HOL";
  case Molecule::HAC:
    return "HAC";
  }
  return "?";
}

inline std::optional<Molecule> parse_molecule(std::string_view name) {
  for (Molecule m : kAllMolecules)
    if (molecule_name(m) == name)
      return m;
  return std::nullopt;
}

template <class T> struct PerMolecule {
  std::array<T, kNumMolecules> values{};

  T &operator[](Molecule m) { return values[index(m)]; }
  const T &operator[](Molecule m) const { return values[index(m)]; }
  T &operator[](std::size_t i) { return values[i]; }
  const T &operator[](std::size_t i) const { return values[i]; }

  auto begin() { return values.begin(); }
  auto end() { return values.end(); }
  auto begin() const { return values.begin(); }
  auto end() const { return values.end(); }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3 &o) const {
    return {x + o.x, y + o.y, z + o.z};
  }
  constexpr Vec3 operator-(const Vec3 &o) const {
    return {x - o.x, y - o.y, z - o.z};
  }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 &operator+=(const Vec3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3 &) const = default;

  constexpr double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
};

inline constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

inline std::string to_string(const Vec3 &v) {
  return "[" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " +
         std::to_string(v.z) + "]";
}

/// Invalid configuration or parameter values.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite state or otherwise failed numerics.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Receiver placed on (or too close to) the transmitter.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace glvsim
