package headfirst.duck;

public interface FlyBehavior {
    void fly();
}
