package headfirst.duck;

public interface QuackBehavior {
    void quack();
}
