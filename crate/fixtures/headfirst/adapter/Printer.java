package headfirst.adapter;

public interface Printer {
    void print(String text);
}
