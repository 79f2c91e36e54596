#pragma once

// Second-order forward-mode scalar: carries f, f', f'' through arithmetic.

#include <cmath>
#include <type_traits>

namespace pdem {

template <class T>
struct BasicJet {
    T v = 0;
    T d = 0;
    T dd = 0;

    constexpr BasicJet() = default;
    constexpr BasicJet(T value) : v(value) {}
    constexpr BasicJet(T value, T d1, T d2) : v(value), d(d1), dd(d2) {}

    static constexpr BasicJet variable(T x) { return {x, T(1), T(0)}; }
};

using Jet = BasicJet<double>;

template <class T>
inline BasicJet<T> operator+(BasicJet<T> a, BasicJet<T> b) {
    return {a.v + b.v, a.d + b.d, a.dd + b.dd};
}
template <class T>
inline BasicJet<T> operator-(BasicJet<T> a, BasicJet<T> b) {
    return {a.v - b.v, a.d - b.d, a.dd - b.dd};
}
template <class T>
inline BasicJet<T> operator-(BasicJet<T> a) { return {-a.v, -a.d, -a.dd}; }
template <class T>
inline BasicJet<T> operator*(BasicJet<T> a, BasicJet<T> b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + T(2) * a.d * b.d + a.v * b.dd};
}
template <class T>
inline BasicJet<T> operator/(BasicJet<T> a, BasicJet<T> b) {
    const T q = a.v / b.v;
    const T q1 = (a.d - q * b.d) / b.v;
    const T q2 = (a.dd - T(2) * q1 * b.d - q * b.dd) / b.v;
    return {q, q1, q2};
}
template <class T>
inline BasicJet<T> operator+(BasicJet<T> a, std::type_identity_t<T> b) { return {a.v + b, a.d, a.dd}; }
template <class T>
inline BasicJet<T> operator+(std::type_identity_t<T> a, BasicJet<T> b) { return b + a; }
template <class T>
inline BasicJet<T> operator-(BasicJet<T> a, std::type_identity_t<T> b) { return {a.v - b, a.d, a.dd}; }
template <class T>
inline BasicJet<T> operator-(std::type_identity_t<T> a, BasicJet<T> b) { return {a - b.v, -b.d, -b.dd}; }
template <class T>
inline BasicJet<T> operator*(BasicJet<T> a, std::type_identity_t<T> b) { return {a.v * b, a.d * b, a.dd * b}; }
template <class T>
inline BasicJet<T> operator*(std::type_identity_t<T> a, BasicJet<T> b) { return b * a; }
template <class T>
inline BasicJet<T> operator/(BasicJet<T> a, std::type_identity_t<T> b) { return {a.v / b, a.d / b, a.dd / b}; }
template <class T>
inline BasicJet<T> operator/(std::type_identity_t<T> a, BasicJet<T> b) { return BasicJet<T>(a) / b; }

/// x^p for x > 0.
template <class T>
inline BasicJet<T> pow(BasicJet<T> x, std::type_identity_t<T> p) {
    const T f = std::pow(x.v, p);
    const T f1 = p * std::pow(x.v, p - T(1));
    const T f2 = p * (p - T(1)) * std::pow(x.v, p - T(2));
    return {f, f1 * x.d, f2 * x.d * x.d + f1 * x.dd};
}

inline double value_of(double x) { return x; }
inline long double value_of(long double x) { return x; }
template <class T>
T value_of(const BasicJet<T>& x) {
    return x.v;
}

}  // namespace pdem
