#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace jones {

// Minimal JSON emitter with fixed field order and %.17g floats, so identical
// inputs always produce byte-identical documents.
class JsonWriter {
  public:
    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(const std::string& k) {
        comma();
        append_string(k);
        out_ += ':';
        pending_value_ = true;
    }

    void value(const std::string& s) {
        comma();
        append_string(s);
    }
    void value(const char* s) { value(std::string(s)); }
    void value(double d) {
        comma();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        out_ += buf;
    }
    void value(long long i) {
        comma();
        out_ += std::to_string(i);
    }
    void value(int i) { value(static_cast<long long>(i)); }
    void value(unsigned long long u) {
        comma();
        out_ += std::to_string(u);
    }
    void value(bool b) {
        comma();
        out_ += b ? "true" : "false";
    }
    // splice a pre-rendered JSON fragment
    void value_raw(const std::string& json) {
        comma();
        out_ += json;
    }

    void field(const std::string& k, const std::string& v) {
        key(k);
        value(v);
    }
    void field(const std::string& k, const char* v) {
        key(k);
        value(v);
    }
    void field(const std::string& k, double v) {
        key(k);
        value(v);
    }
    void field(const std::string& k, int v) {
        key(k);
        value(v);
    }
    void field(const std::string& k, long long v) {
        key(k);
        value(v);
    }
    void field(const std::string& k, unsigned long long v) {
        key(k);
        value(v);
    }
    void field(const std::string& k, bool v) {
        key(k);
        value(v);
    }
    void field_raw(const std::string& k, const std::string& json) {
        key(k);
        value_raw(json);
    }
    void field_complex(const std::string& k, double re, double im) {
        key(k);
        begin_object();
        field("re", re);
        field("im", im);
        end_object();
    }

    const std::string& str() const { return out_; }

  private:
    void open(char c) {
        comma();
        out_ += c;
        first_.push_back(true);
    }
    void close(char c) {
        out_ += c;
        first_.pop_back();
    }
    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back())
                out_ += ',';
            first_.back() = false;
        }
    }
    void append_string(const std::string& s) {
        out_ += '"';
        for (char ch : s) {
            switch (ch) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            case '\r': out_ += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out_ += buf;
                } else {
                    out_ += ch;
                }
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> first_;
    bool pending_value_ = false;
};

} // namespace jones
