package headfirst.observer;

public interface DisplayElement {
    void display();
}
